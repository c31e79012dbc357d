//! Dirac spectra of `M(r, d, T)` and of its base torus.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use super::{
    check_cutoff, widen, Family, HeisenbergGeometry, IndexName, Manifold, Sign, SpinDelta, Spectrum, SpectrumEntry,
    TorusDelta, ValueParts,
};
use crate::error::{Error, Result};
use crate::scalar::{ratio_to_real, Real};

/// All spin structures on `M(r, ·, ·)`: eight for even `r`, four otherwise.
pub fn admissible_spin_structures(r: u32) -> Vec<SpinDelta> {
    let signs = [Sign::Plus, Sign::Minus];
    let mut out = Vec::new();
    for d3 in signs {
        for d1 in signs {
            for d2 in signs {
                let delta = SpinDelta::new(d1, d2, d3);
                if delta.is_admissible(r) {
                    out.push(delta);
                }
            }
        }
    }
    out
}

/// `|τ|·r`, the multiplicity of the irreducible representation `ρ_τ`.
pub fn heisenberg_rep_multiplicity(tau: Rational64, r: u32) -> Result<u64> {
    if tau.is_zero() {
        return Err(Error::OutOfScope("τ = 0 has no Schrödinger representation".into()));
    }
    if *(tau * 2).denom() != 1 {
        return Err(Error::Parameter(format!("τ = {tau} is not in ½ℤ")));
    }
    let m = tau.abs() * Rational64::from_integer(r as i64);
    if !m.is_integer() {
        return Err(Error::Parameter(format!("|τ|·r = {m} is not an integer")));
    }
    Ok(m.to_integer() as u64)
}

/// Admissible lattice `{n/q : n ≡ parity}` restricted to `|n/q| ≤ bound`,
/// where `q = 2r` for α and `q = 2` for β.
fn lattice_axis<T: Real>(denom: i64, sign: Sign, bound: T) -> Vec<i64> {
    let n_max = (bound * T::from_count(denom as usize)).floor().to_i64().unwrap_or(0).max(0);
    let parity = if sign.is_plus() { 0 } else { 1 };
    (-n_max..=n_max).filter(|n| n.rem_euclid(2) == parity).collect()
}

/// `2πd√(α² + β²)`, shared by the Heisenberg and torus generators.
fn lattice_radical<T: Real>(d: T, alpha: &Rational64, beta: &Rational64) -> T {
    let a = ratio_to_real::<T>(alpha);
    let b = ratio_to_real::<T>(beta);
    T::c(2.0) * T::PI() * d * (a * a + b * b).sqrt()
}

fn lattice_points<T: Real>(r: u32, delta: TorusDelta, radius: T) -> Vec<(Rational64, Rational64)> {
    let q = 2 * r as i64;
    let r2 = radius * radius;
    let mut out = Vec::new();
    for n in lattice_axis(q, delta.delta1, radius) {
        let alpha = Rational64::new(n, q);
        let a = ratio_to_real::<T>(&alpha);
        for m in lattice_axis(2, delta.delta2, radius) {
            let beta = Rational64::new(m, 2);
            let b = ratio_to_real::<T>(&beta);
            if a * a + b * b <= r2 {
                out.push((alpha, beta));
            }
        }
    }
    out
}

/// `τ` values `1, 2, …` (integer) or `½, 3/2, …` (half-integer) up to `bound`.
fn tau_range<T: Real>(half_integer: bool, bound: T) -> Vec<Rational64> {
    let twice = (bound * T::c(2.0)).floor().to_i64().unwrap_or(0);
    (1..=twice.max(0))
        .filter(|n| (n % 2 == 1) == half_integer)
        .map(|n| Rational64::new(n, 2))
        .collect()
}

fn spinor_multiplicity(tau: Rational64, r: u32) -> u64 {
    (tau * 2 * Rational64::from_integer(r as i64)).to_integer() as u64
}

/// `λ⁺_{τ,k} = −d²T/4 + 2√(π²τ²/T² + kπd²τ)`.
pub fn lambda_plus<T: Real>(tau: T, k: u64, d: T, t: T) -> T {
    -d * d * t / T::c(4.0) + ac_radical(tau, k, d, t)
}

fn ac_radical<T: Real>(tau: T, k: u64, d: T, t: T) -> T {
    let pi = T::PI();
    T::c(2.0) * (pi * pi * tau * tau / (t * t) + T::from_count(k as usize) * pi * d * d * tau).sqrt()
}

/// Dirac spectrum of `M(r, d, T)` with spin structure `delta`, all `|λ| ≤ Λ`.
pub fn heisenberg_spectrum<T: Real>(geom: &HeisenbergGeometry<T>, delta: SpinDelta, lambda_max: T) -> Result<Spectrum<T>> {
    heisenberg_spectrum_bounded(geom, delta, lambda_max, T::one())
}

/// As [`heisenberg_spectrum`], with every analytic index bound multiplied by
/// `bound_scale` before enumerating.
pub fn heisenberg_spectrum_bounded<T: Real>(
    geom: &HeisenbergGeometry<T>,
    delta: SpinDelta,
    lambda_max: T,
    bound_scale: T,
) -> Result<Spectrum<T>> {
    let geom = HeisenbergGeometry::new(geom.r, geom.d, geom.t)?;
    delta.check_admissible(geom.r)?;
    check_cutoff(lambda_max)?;
    let manifold = Manifold::Heisenberg { geometry: geom, delta };
    if lambda_max <= T::zero() {
        return Ok(Spectrum { manifold, lambda_max, entries: Vec::new() });
    }
    let HeisenbergGeometry { r, d, t } = geom;
    let pi = T::PI();
    let two_pi = T::c(2.0) * pi;
    let s = geom.shift();
    let mut entries = Vec::new();
    let projectable = delta.delta3.is_plus();

    if projectable {
        let radius = widen((lambda_max + s) / (two_pi * d) * bound_scale);
        for (alpha, beta) in lattice_points::<T>(r, delta.base(), radius) {
            let rad = lattice_radical(d, &alpha, &beta);
            let idx = vec![(IndexName::Alpha, alpha), (IndexName::Beta, beta)];
            entries.push(SpectrumEntry::new(ValueParts { offset: -s, radical: rad }, 1, Family::AaPlus, idx.clone()));
            entries.push(SpectrumEntry::new(ValueParts { offset: -s, radical: -rad }, 1, Family::AaMinus, idx));
        }
    }

    let (fam_b, fam_cp, fam_cm) = if projectable {
        (Family::Ab, Family::AcPlus, Family::AcMinus)
    } else {
        (Family::Ba, Family::BbPlus, Family::BbMinus)
    };

    // λ_τ = −s − 2πτ/T: |λ| ≤ Λ iff τ ≤ (Λ − s)T/(2π).
    let tau_b = widen((lambda_max - s) * t / two_pi * bound_scale);
    for tau in tau_range::<T>(!projectable, tau_b) {
        let tr = ratio_to_real::<T>(&tau);
        let parts = ValueParts { offset: -s, radical: -two_pi * tr / t };
        entries.push(SpectrumEntry::new(parts, spinor_multiplicity(tau, r), fam_b, vec![(IndexName::Tau, tau)]));
    }

    // λ± = −s ± R with R ≥ 2πτ/T, so R ≤ Λ + s bounds τ and then k.
    let reach = lambda_max + s;
    let tau_c = widen(reach * t / two_pi * bound_scale);
    for tau in tau_range::<T>(!projectable, tau_c) {
        let tr = ratio_to_real::<T>(&tau);
        let room = reach * reach / T::c(4.0) - pi * pi * tr * tr / (t * t);
        let k_bound = widen(room / (pi * d * d * tr) * bound_scale);
        let k_max = if k_bound >= T::one() { k_bound.floor().to_u64().unwrap_or(0) } else { 0 };
        let mult = spinor_multiplicity(tau, r);
        for k in 1..=k_max {
            let rad = ac_radical(tr, k, d, t);
            let idx = vec![(IndexName::Tau, tau), (IndexName::K, Rational64::from_integer(k as i64))];
            entries.push(SpectrumEntry::new(ValueParts { offset: -s, radical: rad }, mult, fam_cp, idx.clone()));
            entries.push(SpectrumEntry::new(ValueParts { offset: -s, radical: -rad }, mult, fam_cm, idx));
        }
    }

    Ok(Spectrum::from_entries(manifold, lambda_max, entries))
}

/// Dirac spectrum `±2πd√(α² + β²)` of the base torus of `M(r, d, ·)`.
pub fn torus_spectrum<T: Real>(r: u32, d: T, delta: TorusDelta, lambda_max: T) -> Result<Spectrum<T>> {
    torus_spectrum_bounded(r, d, delta, lambda_max, T::one())
}

pub fn torus_spectrum_bounded<T: Real>(
    r: u32,
    d: T,
    delta: TorusDelta,
    lambda_max: T,
    bound_scale: T,
) -> Result<Spectrum<T>> {
    if r == 0 {
        return Err(Error::Parameter("r must be a positive integer".into()));
    }
    if !(d > T::zero()) || !d.is_finite() {
        return Err(Error::Parameter("d must be positive".into()));
    }
    check_cutoff(lambda_max)?;
    let manifold = Manifold::Torus { r, d, delta };
    if lambda_max < T::zero() {
        return Ok(Spectrum { manifold, lambda_max, entries: Vec::new() });
    }
    let radius = widen(lambda_max / (T::c(2.0) * T::PI() * d) * bound_scale);
    let mut entries = Vec::new();
    for (alpha, beta) in lattice_points::<T>(r, delta, radius) {
        let rad = lattice_radical(d, &alpha, &beta);
        let idx = vec![(IndexName::Alpha, alpha), (IndexName::Beta, beta)];
        entries.push(SpectrumEntry::new(ValueParts { offset: T::zero(), radical: rad }, 1, Family::TorusPlus, idx.clone()));
        entries.push(SpectrumEntry::new(ValueParts { offset: T::zero(), radical: -rad }, 1, Family::TorusMinus, idx));
    }
    Ok(Spectrum::from_entries(manifold, lambda_max, entries))
}

/// The metric length `T` at which `λ⁺_{τ,k}` vanishes:
/// `T² = (πτ/d²)(32k + 8√(16k² + 1))`.
pub fn harmonic_spinor_metric<T: Real>(tau: Rational64, k: u64, d: T) -> Result<T> {
    if k == 0 {
        return Err(Error::Domain("harmonic spinors need k ≥ 1".into()));
    }
    if !tau.is_positive() || *(tau * 2).denom() != 1 {
        return Err(Error::Domain(format!("τ = {tau} must be a positive element of ½ℤ")));
    }
    if !(d > T::zero()) || !d.is_finite() {
        return Err(Error::Parameter("d must be positive".into()));
    }
    let tr = ratio_to_real::<T>(&tau);
    let kk = T::from_count(k as usize);
    let t2 = T::PI() * tr / (d * d) * (T::c(32.0) * kk + T::c(8.0) * (T::c(16.0) * kk * kk + T::one()).sqrt());
    let t = t2.sqrt();
    let residual = lambda_plus(tr, k, d, t).abs();
    let scale = (d * d * t / T::c(4.0)).max(T::one());
    if residual > T::c(1e-12).max(T::c(64.0) * T::epsilon()) * scale {
        return Err(Error::Convergence(format!("λ⁺ residual {residual:e} at the closed-form T")));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn geom(r: u32, d: f64, t: f64) -> HeisenbergGeometry<f64> {
        HeisenbergGeometry::new(r, d, t).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn structure_counts() {
        assert_eq!(admissible_spin_structures(1).len(), 4);
        assert_eq!(admissible_spin_structures(2).len(), 8);
        assert_eq!(admissible_spin_structures(3).len(), 4);
        assert!(admissible_spin_structures(5).iter().all(|d| d.delta3.is_plus()));
    }

    #[test]
    fn unit_manifold_small_cutoff() {
        let s = heisenberg_spectrum(&geom(1, 1.0, 1.0), "+++".parse().unwrap(), 1.0).unwrap();
        assert_eq!(s.len(), 2);
        for e in &s.entries {
            assert_eq!(e.value, -0.25);
            assert_eq!(e.index(IndexName::Alpha), Some(q(0, 1)));
        }
    }

    #[test]
    fn half_integer_tau() {
        let s = heisenberg_spectrum(&geom(2, 1.0, 1.0), "++-".parse().unwrap(), 4.0).unwrap();
        let ba: Vec<_> = s.of_family(Family::Ba).collect();
        assert_eq!(ba.len(), 1);
        assert_eq!(ba[0].index(IndexName::Tau), Some(q(1, 2)));
        assert!((ba[0].value - (-0.25 - PI)).abs() < 1e-15);
        assert_eq!(ba[0].multiplicity, 2);
        assert!(s.of_family(Family::AaPlus).next().is_none());
    }

    #[test]
    fn nonpositive_cutoff_is_empty() {
        let s = heisenberg_spectrum(&geom(2, 1.0, 1.0), "-++".parse().unwrap(), 0.0).unwrap();
        assert!(s.is_empty());
        let s = heisenberg_spectrum(&geom(2, 1.0, 1.0), "-++".parse().unwrap(), -3.0).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn inadmissible_rejected() {
        let e = heisenberg_spectrum(&geom(3, 1.0, 1.0), "+--".parse().unwrap(), 5.0).unwrap_err();
        assert!(matches!(e, Error::Admissibility { r: 3, .. }));
        assert!(heisenberg_spectrum(&geom(1, 1.0, 1.0), "+++".parse().unwrap(), f64::INFINITY).is_err());
    }

    #[test]
    fn torus_examples() {
        let s = torus_spectrum(1, 1.0, "++".parse().unwrap(), 7.0).unwrap();
        let vals: Vec<f64> = s.entries.iter().map(|e| e.value).collect();
        assert_eq!(vals.len(), 10);
        assert_eq!(vals.iter().filter(|v| **v == 0.0).count(), 2);
        assert_eq!(vals.iter().filter(|v| (**v - 2.0 * PI).abs() < 1e-12).count(), 4);
        assert_eq!(vals.iter().filter(|v| (**v + 2.0 * PI).abs() < 1e-12).count(), 4);

        let s = torus_spectrum(1, 1.0, "+-".parse().unwrap(), 4.0).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.entries.iter().filter(|e| (e.value - PI).abs() < 1e-12).count(), 2);
        assert_eq!(s.entries.iter().filter(|e| (e.value + PI).abs() < 1e-12).count(), 2);
    }

    #[test]
    fn rep_multiplicity() {
        assert_eq!(heisenberg_rep_multiplicity(q(2, 1), 3).unwrap(), 6);
        assert_eq!(heisenberg_rep_multiplicity(q(1, 2), 2).unwrap(), 1);
        assert_eq!(heisenberg_rep_multiplicity(q(-3, 2), 4).unwrap(), 6);
        assert!(matches!(heisenberg_rep_multiplicity(q(0, 1), 3), Err(Error::OutOfScope(_))));
        assert!(heisenberg_rep_multiplicity(q(1, 3), 3).is_err());
    }

    #[test]
    fn harmonic_metric() {
        let t = harmonic_spinor_metric(q(1, 1), 1, 1.0).unwrap();
        let expected = (PI * (32.0 + 8.0 * 17f64.sqrt())).sqrt();
        assert!((t - expected).abs() <= 1e-12 * expected);
        assert!((t - 14.288_313_814_519_716).abs() < 1e-12);
        assert!(lambda_plus(1.0, 1, 1.0, t).abs() <= 1e-12);
        assert!(matches!(harmonic_spinor_metric(q(1, 1), 0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn lambda_plus_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let v = lambda_plus(1.0, 3, 1.0, i as f64 * 0.2);
            assert!(v < prev);
            prev = v;
        }
    }
}
