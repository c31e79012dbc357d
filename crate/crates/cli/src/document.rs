//! Machine-readable output: spectrum documents and report tables, encoded
//! as JSON or CSV with fixed float formatting.

use std::collections::BTreeMap;
use std::io;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use spectral_nil::spectra::MergedEntry;
use spectral_nil::{IndexName, Spectrum, SpectrumEntry};

pub const SCHEMA_VERSION: u32 = 1;

/// A scalar in a parameter map or table cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    UInt(u64),
    Real(f64),
    Text(String),
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v.into())
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        i64::try_from(v).map(Value::Int).unwrap_or(Value::UInt(v))
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::from(v as u64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<Rational64> for Value {
    fn from(v: Rational64) -> Self {
        Value::Text(rational(v))
    }
}

impl Value {
    fn csv_field(&self) -> String {
        match self {
            Value::Null => String::new(),
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::UInt(u) => u.to_string(),
            Value::Real(x) => real(*x),
            Value::Text(s) => s.clone(),
        }
    }
}

pub type Params = BTreeMap<String, Value>;

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rationals always print as `p/q`, integers included.
pub fn rational(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub value: f64,
    pub multiplicity: u64,
    pub family: String,
    pub indices: BTreeMap<String, String>,
}

impl Entry {
    pub fn from_spectrum_entry(e: &SpectrumEntry) -> Self {
        Self {
            value: e.value,
            multiplicity: e.multiplicity,
            family: e.family.label().to_string(),
            indices: index_map(&e.indices),
        }
    }

    /// Merged entries carry their member families joined by `|` and no indices.
    pub fn from_merged(m: &MergedEntry<f64>) -> Self {
        let family = m.families.iter().map(|f| f.label()).collect::<Vec<_>>().join("|");
        Self { value: m.value, multiplicity: m.multiplicity, family, indices: BTreeMap::new() }
    }

    fn indices_field(&self) -> String {
        self.indices.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}

pub fn index_map(indices: &[(IndexName, Rational64)]) -> BTreeMap<String, String> {
    indices.iter().map(|(n, v)| (n.name().to_string(), rational(*v))).collect()
}

pub fn index_string(indices: &[(IndexName, Rational64)]) -> String {
    indices.iter().map(|(n, v)| format!("{}={}", n.name(), rational(*v))).collect::<Vec<_>>().join(";")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: u32,
    pub manifold: String,
    pub params: Params,
    pub lambda_max: f64,
    pub entries: Vec<Entry>,
}

impl OutputDocument {
    pub fn from_spectrum(spec: &Spectrum, params: Params, merge_tol: Option<f64>) -> Self {
        let entries = match merge_tol {
            Some(tol) => spec.merged(tol).iter().map(Entry::from_merged).collect(),
            None => spec.entries.iter().map(Entry::from_spectrum_entry).collect(),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            manifold: spec.manifold.name().to_string(),
            params,
            lambda_max: spec.lambda_max,
            entries,
        }
    }
}

/// Tabular report for the non-spectrum subcommands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub schema_version: u32,
    pub report: String,
    pub params: Params,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl TableDocument {
    pub fn new(report: &str, params: Params, columns: &[&str]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            report: report.to_string(),
            params,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Spectrum(OutputDocument),
    Table(TableDocument),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

struct FixedFloats;

impl serde_json::ser::Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(real(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

fn to_json<S: Serialize>(doc: &S) -> serde_json::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats);
    doc.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(buf)
}

impl Document {
    pub fn encode(&self, format: Format) -> Result<Vec<u8>, String> {
        match (self, format) {
            (Document::Spectrum(d), Format::Json) => to_json(d).map_err(|e| e.to_string()),
            (Document::Table(d), Format::Json) => to_json(d).map_err(|e| e.to_string()),
            (Document::Spectrum(d), Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let res: csv::Result<()> = (|| {
                    w.write_record(["value", "multiplicity", "family", "indices"])?;
                    for e in &d.entries {
                        w.write_record([real(e.value), e.multiplicity.to_string(), e.family.clone(), e.indices_field()])?;
                    }
                    Ok(())
                })();
                res.map_err(|e| e.to_string())?;
                w.into_inner().map_err(|e| e.to_string())
            }
            (Document::Table(d), Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let res: csv::Result<()> = (|| {
                    w.write_record(&d.columns)?;
                    for row in &d.rows {
                        w.write_record(row.iter().map(Value::csv_field))?;
                    }
                    Ok(())
                })();
                res.map_err(|e| e.to_string())?;
                w.into_inner().map_err(|e| e.to_string())
            }
        }
    }
}
