//! Closed-form Dirac spectra as cutoff-complete multisets.
//!
//! Every generator enumerates its index ranges up to analytic bounds and keeps
//! each index tuple as its own entry, so coincident eigenvalues stay separate
//! until [`Spectrum::merged`] is asked for.

mod compare;
mod heisenberg;
mod sphere;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use compare::{spectrum_compare, CompareReport, MultiplicityMismatch};
pub use heisenberg::{
    admissible_spin_structures, harmonic_spinor_metric, heisenberg_rep_multiplicity, heisenberg_spectrum,
    heisenberg_spectrum_bounded, lambda_plus, torus_spectrum, torus_spectrum_bounded,
};
pub use sphere::{berger_spectrum, berger_spectrum_bounded, cpm_multiplicity, cpm_spectrum, cpm_spectrum_bounded};

/// Default tolerance of the merge view.
pub const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

/// Spin structure `(δ₁, δ₂, δ₃)` on a Heisenberg manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinDelta {
    pub delta1: Sign,
    pub delta2: Sign,
    pub delta3: Sign,
}

impl SpinDelta {
    pub const fn new(delta1: Sign, delta2: Sign, delta3: Sign) -> Self {
        Self { delta1, delta2, delta3 }
    }

    /// `δ₃ = −1` needs an even `r`.
    pub fn is_admissible(&self, r: u32) -> bool {
        self.delta3.is_plus() || r % 2 == 0
    }

    pub fn check_admissible(&self, r: u32) -> Result<()> {
        if self.is_admissible(r) {
            Ok(())
        } else {
            Err(Error::Admissibility { r, delta: self.to_string() })
        }
    }

    pub fn base(&self) -> TorusDelta {
        TorusDelta { delta1: self.delta1, delta2: self.delta2 }
    }
}

impl fmt::Display for SpinDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.delta1.as_char(), self.delta2.as_char(), self.delta3.as_char())
    }
}

impl FromStr for SpinDelta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs: Option<Vec<Sign>> = s.chars().map(Sign::from_char).collect();
        match signs.as_deref() {
            Some([a, b, c]) => Ok(Self::new(*a, *b, *c)),
            _ => Err(Error::Parameter(format!("spin structure must be three characters from {{+,-}}, got {s:?}"))),
        }
    }
}

/// Spin structure `(δ₁, δ₂)` on the base 2-torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusDelta {
    pub delta1: Sign,
    pub delta2: Sign,
}

impl fmt::Display for TorusDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.delta1.as_char(), self.delta2.as_char())
    }
}

impl FromStr for TorusDelta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs: Option<Vec<Sign>> = s.chars().map(Sign::from_char).collect();
        match signs.as_deref() {
            Some([a, b]) => Ok(Self { delta1: *a, delta2: *b }),
            _ => Err(Error::Parameter(format!("torus spin structure must be two characters from {{+,-}}, got {s:?}"))),
        }
    }
}

/// `M(r, d, T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergGeometry<T> {
    pub r: u32,
    pub d: T,
    pub t: T,
}

impl<T: Real> HeisenbergGeometry<T> {
    pub fn new(r: u32, d: T, t: T) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parameter("r must be a positive integer".into()));
        }
        if !(d > T::zero()) || !d.is_finite() {
            return Err(Error::Parameter("d must be positive".into()));
        }
        if !(t > T::zero()) || !t.is_finite() {
            return Err(Error::Parameter("T must be positive".into()));
        }
        Ok(Self { r, d, t })
    }

    /// `d²T/4`.
    pub fn shift(&self) -> T {
        self.d * self.d * self.t / T::c(4.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    AaPlus,
    AaMinus,
    Ab,
    AcPlus,
    AcMinus,
    Ba,
    BbPlus,
    BbMinus,
    TorusPlus,
    TorusMinus,
    BergerI,
    BergerII,
    BergerIIIPlus,
    BergerIIIMinus,
    CpmPlus,
    CpmMinus,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::AaPlus,
        Family::AaMinus,
        Family::Ab,
        Family::AcPlus,
        Family::AcMinus,
        Family::Ba,
        Family::BbPlus,
        Family::BbMinus,
        Family::TorusPlus,
        Family::TorusMinus,
        Family::BergerI,
        Family::BergerII,
        Family::BergerIIIPlus,
        Family::BergerIIIMinus,
        Family::CpmPlus,
        Family::CpmMinus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::AaPlus => "A.a+",
            Family::AaMinus => "A.a-",
            Family::Ab => "A.b",
            Family::AcPlus => "A.c+",
            Family::AcMinus => "A.c-",
            Family::Ba => "B.a",
            Family::BbPlus => "B.b+",
            Family::BbMinus => "B.b-",
            Family::TorusPlus => "torus+",
            Family::TorusMinus => "torus-",
            Family::BergerI => "berger.i",
            Family::BergerII => "berger.ii",
            Family::BergerIIIPlus => "berger.iii+",
            Family::BergerIIIMinus => "berger.iii-",
            Family::CpmPlus => "cpm+",
            Family::CpmMinus => "cpm-",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.label() == s)
    }

    /// Families of the Heisenberg generator that stay bounded as `T → 0`.
    pub fn is_heisenberg_torus_like(self) -> bool {
        matches!(self, Family::AaPlus | Family::AaMinus)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexName {
    Alpha,
    Beta,
    Tau,
    K,
    A,
    A1,
    A2,
    J,
}

impl IndexName {
    pub fn name(self) -> &'static str {
        match self {
            IndexName::Alpha => "alpha",
            IndexName::Beta => "beta",
            IndexName::Tau => "tau",
            IndexName::K => "k",
            IndexName::A => "a",
            IndexName::A1 => "a1",
            IndexName::A2 => "a2",
            IndexName::J => "j",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        use IndexName::*;
        [Alpha, Beta, Tau, K, A, A1, A2, J].into_iter().find(|i| i.name() == s)
    }
}

/// `value = offset + radical`. Two entries with bit-identical radicals differ
/// exactly by the difference of their offsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueParts<T> {
    pub offset: T,
    pub radical: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry<T> {
    pub value: T,
    pub parts: ValueParts<T>,
    pub multiplicity: u64,
    pub family: Family,
    pub indices: Vec<(IndexName, Rational64)>,
}

impl<T: Real> SpectrumEntry<T> {
    pub(crate) fn new(parts: ValueParts<T>, multiplicity: u64, family: Family, indices: Vec<(IndexName, Rational64)>) -> Self {
        Self { value: parts.offset + parts.radical, parts, multiplicity, family, indices }
    }

    pub fn index(&self, name: IndexName) -> Option<Rational64> {
        self.indices.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    /// `|self − other|`, computed from the offsets alone when both radicals
    /// are bit-identical.
    pub fn gap(&self, other: &Self) -> T {
        if self.parts.radical == other.parts.radical {
            (self.parts.offset - other.parts.offset).abs()
        } else {
            (self.value - other.value).abs()
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.value
            .partial_cmp(&other.value)
            .expect("finite eigenvalues")
            .then_with(|| self.family.label().cmp(other.family.label()))
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Manifold<T> {
    Heisenberg { geometry: HeisenbergGeometry<T>, delta: SpinDelta },
    Torus { r: u32, d: T, delta: TorusDelta },
    Berger { m: u32, ell: T },
    ComplexProjective { m: u32 },
}

impl<T: Real> Manifold<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Manifold::Heisenberg { .. } => "heisenberg",
            Manifold::Torus { .. } => "torus",
            Manifold::Berger { .. } => "berger",
            Manifold::ComplexProjective { .. } => "cpm",
        }
    }
}

/// A cutoff-complete multiset of eigenvalues `|λ| ≤ Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub manifold: Manifold<T>,
    pub lambda_max: T,
    pub entries: Vec<SpectrumEntry<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MergedEntry<T> {
    pub value: T,
    pub multiplicity: u64,
    /// Number of unmerged entries that were folded in.
    pub members: usize,
    /// Distinct families of the members, sorted.
    pub families: Vec<Family>,
}

impl<T: Real> Spectrum<T> {
    pub(crate) fn from_entries(manifold: Manifold<T>, lambda_max: T, mut entries: Vec<SpectrumEntry<T>>) -> Self {
        entries.retain(|e| e.value.abs() <= lambda_max);
        entries.sort_by(SpectrumEntry::canonical_cmp);
        Self { manifold, lambda_max, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn of_family(&self, family: Family) -> impl Iterator<Item = &SpectrumEntry<T>> {
        self.entries.iter().filter(move |e| e.family == family)
    }

    /// Folds runs of values whose consecutive gaps are at most `tol`. The
    /// merged value is the first of the run.
    pub fn merged(&self, tol: T) -> Vec<MergedEntry<T>> {
        let mut out: Vec<MergedEntry<T>> = Vec::new();
        let mut last = T::neg_infinity();
        for e in &self.entries {
            match out.last_mut() {
                Some(m) if e.value - last <= tol => {
                    m.multiplicity += e.multiplicity;
                    m.members += 1;
                    if let Err(pos) = m.families.binary_search(&e.family) {
                        m.families.insert(pos, e.family);
                    }
                }
                _ => out.push(MergedEntry {
                    value: e.value,
                    multiplicity: e.multiplicity,
                    members: 1,
                    families: vec![e.family],
                }),
            }
            last = e.value;
        }
        out
    }

    /// Total multiplicity of entries within `tol` of `value`.
    pub fn multiplicity_near(&self, value: T, tol: T) -> u64 {
        self.entries.iter().filter(|e| (e.value - value).abs() <= tol).map(|e| e.multiplicity).sum()
    }
}

pub(crate) fn check_cutoff<T: Real>(lambda_max: T) -> Result<()> {
    if lambda_max.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter("cutoff Λ must be finite".into()))
    }
}

/// Bound slack so that floating-point rounding never drops a boundary index.
pub(crate) fn widen<T: Real>(x: T) -> T {
    x * (T::one() + T::c(1e-9)) + T::c(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_parsing() {
        let d: SpinDelta = "+-+".parse().unwrap();
        assert_eq!(d, SpinDelta::new(Sign::Plus, Sign::Minus, Sign::Plus));
        assert_eq!(d.to_string(), "+-+");
        assert!("++".parse::<SpinDelta>().is_err());
        assert!("+x+".parse::<SpinDelta>().is_err());
        let t: TorusDelta = "-+".parse().unwrap();
        assert_eq!(t.to_string(), "-+");
    }

    #[test]
    fn admissibility() {
        let d: SpinDelta = "++-".parse().unwrap();
        assert!(!d.is_admissible(3));
        assert!(d.is_admissible(2));
        assert!(matches!(d.check_admissible(1), Err(Error::Admissibility { r: 1, .. })));
    }

    #[test]
    fn family_labels_roundtrip() {
        for f in Family::ALL {
            assert_eq!(Family::from_label(f.label()), Some(f));
        }
        assert_eq!(IndexName::from_name("a2"), Some(IndexName::A2));
    }

    #[test]
    fn geometry_validation() {
        assert!(HeisenbergGeometry::new(0, 1.0, 1.0).is_err());
        assert!(HeisenbergGeometry::new(1, -1.0, 1.0).is_err());
        assert!(HeisenbergGeometry::new(1, 1.0, f64::NAN).is_err());
        assert_eq!(HeisenbergGeometry::new(1, 2.0, 1.0).unwrap().shift(), 1.0);
    }
}
