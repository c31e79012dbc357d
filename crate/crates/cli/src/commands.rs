use spectral_nil::collapse::{berger_collapse_report, heisenberg_collapse_report, LimitLattice};
use spectral_nil::gornet::delta_tau_poly;
use spectral_nil::oracle::audit::spectrum_completeness_audit;
use spectral_nil::oracle::fiber::{analytic_block_eigenvalues, default_half_width, fiber_block_matrix, fiber_operator_fd};
use spectral_nil::spectra::{
    berger_spectrum, cpm_spectrum, harmonic_spinor_metric, heisenberg_spectrum, lambda_plus, torus_spectrum,
};
use spectral_nil::{
    CollapseReport, CotangentSample, Error, Generator, GornetFamily, HeisenbergGeometry, Spectrum,
};

use crate::args::{
    AuditCmd, AuditTarget, BergerParams, CollapseCmd, Command, CpmParams, GornetCmd, HeisenbergParams, OracleCmd,
    SpectrumOpts, TorusParams,
};
use crate::document::{index_string, Document, OutputDocument, Params, TableDocument, Value};

type Result<T> = std::result::Result<T, Error>;

fn params<const N: usize>(pairs: [(&str, Value); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn heisenberg_params(p: &HeisenbergParams) -> Params {
    params([
        ("r", p.r.into()),
        ("d", p.d.into()),
        ("T", p.t.into()),
        ("delta", p.delta.to_string().into()),
    ])
}

fn torus_params(p: &TorusParams) -> Params {
    params([("r", p.r.into()), ("d", p.d.into()), ("delta", p.delta.to_string().into())])
}

fn berger_params(p: &BergerParams) -> Params {
    params([("m", p.m.into()), ("ell", p.ell.into())])
}

fn cpm_params(p: &CpmParams) -> Params {
    params([("m", p.m.into())])
}

fn spectrum_doc(spec: &Spectrum, mut p: Params, opts: &SpectrumOpts) -> Result<Document> {
    if let Some(tol) = opts.merge_tol {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::Parameter("merge tolerance must be finite and non-negative".into()));
        }
        p.insert("merge_tol".into(), tol.into());
    }
    Ok(Document::Spectrum(OutputDocument::from_spectrum(spec, p, opts.merge_tol)))
}

pub fn dispatch(cmd: &Command) -> Result<Document> {
    match cmd {
        Command::Heisenberg(c) => {
            let p = &c.params;
            let spec = heisenberg_spectrum(&HeisenbergGeometry::new(p.r, p.d, p.t)?, p.delta, c.opts.lambda_max)?;
            spectrum_doc(&spec, heisenberg_params(p), &c.opts)
        }
        Command::Torus(c) => {
            let p = &c.params;
            let spec = torus_spectrum(p.r, p.d, p.delta, c.opts.lambda_max)?;
            spectrum_doc(&spec, torus_params(p), &c.opts)
        }
        Command::Berger(c) => {
            let spec = berger_spectrum(c.params.m, c.params.ell, c.opts.lambda_max)?;
            spectrum_doc(&spec, berger_params(&c.params), &c.opts)
        }
        Command::Cpm(c) => {
            let spec = cpm_spectrum(c.params.m, c.opts.lambda_max)?;
            spectrum_doc(&spec, cpm_params(&c.params), &c.opts)
        }
        Command::Collapse(c) => collapse(c),
        Command::Oracle(c) => oracle(c),
        Command::Gornet(c) => gornet(c),
        Command::Audit(c) => audit(c),
    }
}

fn lattice_name(l: LimitLattice) -> &'static str {
    match l {
        LimitLattice::Integer => "Z",
        LimitLattice::HalfInteger => "Z+1/2",
    }
}

const COLLAPSE_COLUMNS: [&str; 11] =
    ["parameter", "ell", "class", "family", "indices", "value", "partner_value", "gap", "scaled", "nearest", "residual"];

fn collapse_table(name: &str, mut p: Params, rep: &CollapseReport) -> Document {
    p.insert("lattice".into(), lattice_name(rep.lattice).into());
    p.insert("all_classified".into(), rep.all_classified.into());
    p.insert("all_matched".into(), rep.all_matched.into());
    let mut table = TableDocument::new(name, p, &COLLAPSE_COLUMNS);
    for s in &rep.slices {
        let lead = |class: &str, family: &str, indices: String, value: f64| -> Vec<Value> {
            vec![s.parameter.into(), s.ell.into(), class.into(), family.into(), indices.into(), value.into()]
        };
        for m in &s.matched {
            let mut row = lead("matched", m.bundle.family.label(), index_string(&m.bundle.indices), m.bundle.value);
            row.extend([m.base.value.into(), m.gap.into(), Value::Null, Value::Null, Value::Null]);
            table.push(row);
        }
        for u in &s.unmatched {
            let mut row = lead("unmatched", u.family.label(), index_string(&u.indices), u.value);
            row.extend([Value::Null, Value::Null, Value::Null, Value::Null, Value::Null]);
            table.push(row);
        }
        for d in &s.divergent {
            let mut row = lead("divergent", d.entry.family.label(), index_string(&d.entry.indices), d.entry.value);
            row.extend([Value::Null, Value::Null, d.scaled.into(), d.nearest.into(), d.residual.into()]);
            table.push(row);
        }
    }
    Document::Table(table)
}

fn collapse(c: &CollapseCmd) -> Result<Document> {
    match c {
        CollapseCmd::Heisenberg { r, d, delta, t, lambda_max } => {
            let rep = heisenberg_collapse_report(*r, *d, *delta, t, *lambda_max)?;
            let p = params([
                ("r", (*r).into()),
                ("d", (*d).into()),
                ("delta", delta.to_string().into()),
                ("lambda_max", (*lambda_max).into()),
            ]);
            Ok(collapse_table("collapse-heisenberg", p, &rep))
        }
        CollapseCmd::Berger { m, ell, lambda_max } => {
            let rep = berger_collapse_report(*m, ell, *lambda_max)?;
            let p = params([("m", (*m).into()), ("lambda_max", (*lambda_max).into())]);
            Ok(collapse_table("collapse-berger", p, &rep))
        }
    }
}

fn oracle(c: &OracleCmd) -> Result<Document> {
    match c {
        OracleCmd::Block { tau, k, d, t } => {
            let block = fiber_block_matrix(*tau, *k, *d, *t)?;
            let ana = analytic_block_eigenvalues(*tau, *k, *d, *t);
            let p = params([
                ("tau", (*tau).into()),
                ("k", (*k).into()),
                ("d", (*d).into()),
                ("T", (*t).into()),
                ("max_imaginary", block.max_imaginary_part().into()),
            ]);
            let mut table = TableDocument::new("oracle-block", p, &["numeric", "analytic", "abs_diff"]);
            for (x, a) in block.real_eigenvalues().iter().zip(&ana) {
                table.push(vec![(*x).into(), (*a).into(), (x - a).abs().into()]);
            }
            Ok(Document::Table(table))
        }
        OracleCmd::Fd { tau, d, t, n, half_width, count } => {
            let width = half_width.unwrap_or_else(|| default_half_width(*tau, *count));
            let ev = fiber_operator_fd(*tau, *d, *t, *n, width)?;
            let p = params([
                ("tau", (*tau).into()),
                ("d", (*d).into()),
                ("T", (*t).into()),
                ("n", (*n).into()),
                ("half_width", width.into()),
            ]);
            let mut table = TableDocument::new("oracle-fd", p, &["rank", "eigenvalue"]);
            for (i, v) in ev.iter().take(*count).enumerate() {
                table.push(vec![i.into(), (*v).into()]);
            }
            Ok(Document::Table(table))
        }
        OracleCmd::Harmonic { tau, k, d } => {
            let t = harmonic_spinor_metric(*tau, *k, *d)?;
            let tau_f = *tau.numer() as f64 / *tau.denom() as f64;
            let p = params([("tau", (*tau).into()), ("k", (*k).into()), ("d", (*d).into())]);
            let mut table = TableDocument::new("oracle-harmonic", p, &["T", "lambda_plus"]);
            table.push(vec![t.into(), lambda_plus(tau_f, *k, *d, t).into()]);
            Ok(Document::Table(table))
        }
    }
}

fn gornet(c: &GornetCmd) -> Result<Document> {
    let fam = GornetFamily::new()?;
    match c {
        GornetCmd::Scan { bound, s, eig_tol } => {
            let ws = fam.deformation_scan(*bound, *s, *eig_tol, None)?;
            let p = params([("box", (*bound).into()), ("s", (*s).into()), ("eig_tol", (*eig_tol).into())]);
            let mut table = TableDocument::new(
                "gornet-scan",
                p,
                &["t1", "t2", "t3", "t4", "delta_poly", "displacement", "det_at_zero", "det_at_probe"],
            );
            for w in &ws {
                let mut row: Vec<Value> = w.lattice_point.iter().map(|&x| x.into()).collect();
                row.extend([w.delta_poly.into(), w.displacement.into(), w.det_at_zero.into(), w.det_at_probe.into()]);
                table.push(row);
            }
            Ok(Document::Table(table))
        }
        GornetCmd::Compare { tol } => {
            let cmp = fam.compare_reference(*tol)?;
            let path = if cmp.matches {
                "reference"
            } else if cmp.matches_negated {
                "fallback-negated"
            } else {
                "fallback-numeric"
            };
            let p = params([
                ("tol", (*tol).into()),
                ("matches", cmp.matches.into()),
                ("matches_negated", cmp.matches_negated.into()),
                ("max_diff", cmp.max_diff.into()),
                ("max_diff_negated", cmp.max_diff_negated.into()),
                ("path", path.into()),
            ]);
            let mut table = TableDocument::new(
                "gornet-compare",
                p,
                &["degree", "computed_re", "computed_im", "reference_re", "reference_im"],
            );
            for (i, (a, b)) in cmp.computed.iter().zip(&cmp.reference).enumerate() {
                table.push(vec![i.into(), a.re.into(), a.im.into(), b.re.into(), b.im.into()]);
            }
            Ok(Document::Table(table))
        }
        GornetCmd::Delta { tau, h } => {
            let t: [f64; 4] = tau
                .as_slice()
                .try_into()
                .map_err(|_| Error::Parameter(format!("--tau needs 4 components, got {}", tau.len())))?;
            let sample = CotangentSample { t };
            let num = fam.delta_tau_numeric(&sample, *h)?;
            let poly = delta_tau_poly(&sample);
            let rel = if poly == 0.0 { num.abs() } else { ((num - poly) / poly).abs() };
            let p = params([
                ("t1", t[0].into()),
                ("t2", t[1].into()),
                ("t3", t[2].into()),
                ("t4", t[3].into()),
                ("h", (*h).into()),
            ]);
            let mut table = TableDocument::new("gornet-delta", p, &["numeric", "polynomial", "relative_diff"]);
            table.push(vec![num.into(), poly.into(), rel.into()]);
            Ok(Document::Table(table))
        }
    }
}

fn audit(c: &AuditCmd) -> Result<Document> {
    let (gen, lambda_max, mut p, name): (Generator, f64, Params, &str) = match &c.target {
        AuditTarget::Heisenberg { params: hp, lambda_max } => (
            Generator::Heisenberg { geometry: HeisenbergGeometry::new(hp.r, hp.d, hp.t)?, delta: hp.delta },
            *lambda_max,
            heisenberg_params(hp),
            "heisenberg",
        ),
        AuditTarget::Torus { params: tp, lambda_max } => {
            (Generator::Torus { r: tp.r, d: tp.d, delta: tp.delta }, *lambda_max, torus_params(tp), "torus")
        }
        AuditTarget::Berger { params: bp, lambda_max } => {
            (Generator::Berger { m: bp.m, ell: bp.ell }, *lambda_max, berger_params(bp), "berger")
        }
        AuditTarget::Cpm { params: cp, lambda_max } => (Generator::Cpm { m: cp.m }, *lambda_max, cpm_params(cp), "cpm"),
    };
    let rep = spectrum_completeness_audit(&gen, lambda_max, c.margin)?;
    p.insert("generator".into(), name.into());
    p.insert("lambda_max".into(), lambda_max.into());
    p.insert("margin".into(), c.margin.into());
    p.insert("complete".into(), rep.complete.into());
    p.insert("entries".into(), rep.entries.into());
    p.insert("reference_entries".into(), rep.reference_entries.into());
    let mut table = TableDocument::new("audit", p, &["missing_value"]);
    for v in &rep.missing {
        table.push(vec![(*v).into()]);
    }
    Ok(Document::Table(table))
}
