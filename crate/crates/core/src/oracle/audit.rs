//! Completeness audits: rerun a generator with enlarged index bounds and
//! check that nothing new appears below the cutoff.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectra::{
    berger_spectrum_bounded, cpm_spectrum_bounded, heisenberg_spectrum_bounded, torus_spectrum_bounded,
    HeisenbergGeometry, SpinDelta, Spectrum, TorusDelta,
};

/// A generator invocation without its cutoff.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator<T> {
    Heisenberg { geometry: HeisenbergGeometry<T>, delta: SpinDelta },
    Torus { r: u32, d: T, delta: TorusDelta },
    Berger { m: u32, ell: T },
    Cpm { m: u32 },
}

impl<T: Real> Generator<T> {
    pub fn run(&self, lambda_max: T, bound_scale: T) -> Result<Spectrum<T>> {
        match self {
            Generator::Heisenberg { geometry, delta } => {
                heisenberg_spectrum_bounded(geometry, *delta, lambda_max, bound_scale)
            }
            Generator::Torus { r, d, delta } => torus_spectrum_bounded(*r, *d, *delta, lambda_max, bound_scale),
            Generator::Berger { m, ell } => berger_spectrum_bounded(*m, *ell, lambda_max, bound_scale),
            Generator::Cpm { m } => cpm_spectrum_bounded(*m, lambda_max, bound_scale),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport<T> {
    pub complete: bool,
    pub entries: usize,
    pub reference_entries: usize,
    /// Values present in the enlarged run but not in the original.
    pub missing: Vec<T>,
}

/// Audits the generator as shipped (bound scale 1).
pub fn spectrum_completeness_audit<T: Real>(generator: &Generator<T>, lambda_max: T, margin: T) -> Result<AuditReport<T>> {
    spectrum_completeness_audit_scaled(generator, lambda_max, margin, T::one())
}

/// Audits a run whose bounds were scaled by `base_scale`; the reference run
/// uses `base_scale · margin`.
pub fn spectrum_completeness_audit_scaled<T: Real>(
    generator: &Generator<T>,
    lambda_max: T,
    margin: T,
    base_scale: T,
) -> Result<AuditReport<T>> {
    if !(margin >= T::c(2.0)) {
        return Err(Error::Parameter("audit margin must be at least 2".into()));
    }
    let original = generator.run(lambda_max, base_scale)?;
    let reference = generator.run(lambda_max, base_scale * margin)?;
    let missing = reference
        .entries
        .iter()
        .filter(|e| !original.entries.iter().any(|o| o.family == e.family && o.indices == e.indices))
        .map(|e| e.value)
        .collect();
    Ok(AuditReport {
        complete: original.entries == reference.entries,
        entries: original.len(),
        reference_entries: reference.len(),
        missing,
    })
}
