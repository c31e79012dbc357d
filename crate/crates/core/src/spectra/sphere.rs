//! Berger spheres `S^{2m+1}` and complex projective spaces `CP^m`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

use super::{check_cutoff, widen, Family, IndexName, Manifold, Spectrum, SpectrumEntry, ValueParts};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn exact_quotient(num: BigUint, den: BigUint, what: impl FnOnce() -> String) -> Result<u64> {
    if den.is_zero() {
        return Err(Error::Multiplicity(format!("{}: zero denominator", what())));
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() || q.is_zero() {
        return Err(Error::Multiplicity(format!("{}: {num}/{den}", what())));
    }
    q.to_u64().ok_or_else(|| Error::Multiplicity(format!("{}: {q} exceeds 64 bits", what())))
}

fn binomial(n: u64, k: u64) -> Result<u64> {
    exact_quotient(factorial(n), factorial(k) * factorial(n - k), || format!("C({n}, {k})"))
}

/// Multiplicity of the family-(iii) eigenvalues of `S^{2m+1}`.
fn berger_iii_multiplicity(m: u64, a1: u64, a2: u64, j: u64) -> Result<u64> {
    let num = factorial(a1 + m) * factorial(a2 + m) * BigUint::from(a1 + a2 + m + 1);
    let den = factorial(a1)
        * factorial(a2)
        * BigUint::from(a1 + m - j)
        * BigUint::from(a2 + j + 1)
        * factorial(m)
        * factorial(j)
        * factorial(m - j - 1);
    exact_quotient(num, den, || format!("berger (iii) m={m} a1={a1} a2={a2} j={j}"))
}

/// Multiplicity of `±2√((a₁+h)(a₂+h))` on `CP^m`, `h = (m+1)/2`, for odd `m`
/// and `|a₁ − a₂| ≤ (m−1)/2`.
pub fn cpm_multiplicity(m: u32, a1: u64, a2: u64) -> Result<u64> {
    if m % 2 == 0 {
        return Err(Error::NonSpin(m));
    }
    let m = m as u64;
    let h = (m + 1) / 2;
    let w = (m - 1) / 2;
    if a1.abs_diff(a2) > w {
        return Err(Error::Parameter(format!("|a1 − a2| must be at most {w}")));
    }
    let num = factorial(a1 + m) * factorial(a2 + m) * BigUint::from(a1 + a2 + m + 1);
    let den = factorial(a1)
        * factorial(a2)
        * BigUint::from(a1 + h)
        * BigUint::from(a2 + h)
        * factorial(m)
        * factorial(a1 + w - a2)
        * factorial(a2 + w - a1);
    exact_quotient(num, den, || format!("CP^{m} a1={a1} a2={a2}"))
}

fn int(v: u64) -> Rational64 {
    Rational64::from_integer(v as i64)
}

/// Dirac spectrum of `S^{2m+1}` with the Berger metric of fiber scale `ℓ`.
pub fn berger_spectrum<T: Real>(m: u32, ell: T, lambda_max: T) -> Result<Spectrum<T>> {
    berger_spectrum_bounded(m, ell, lambda_max, T::one())
}

pub fn berger_spectrum_bounded<T: Real>(m: u32, ell: T, lambda_max: T, bound_scale: T) -> Result<Spectrum<T>> {
    if m == 0 {
        return Err(Error::Parameter("m must be a positive integer".into()));
    }
    if !(ell > T::zero()) || !ell.is_finite() {
        return Err(Error::Parameter("ℓ must be positive".into()));
    }
    check_cutoff(lambda_max)?;
    let manifold = Manifold::Berger { m, ell };
    let mut entries = Vec::new();
    if lambda_max < T::zero() {
        return Ok(Spectrum { manifold, lambda_max, entries });
    }
    let mu = m as u64;
    let mr = T::from_count(m as usize);
    let half = T::c(0.5);
    let h = (mr + T::one()) * half;
    let sign_ii = if m % 2 == 1 { T::one() } else { -T::one() };

    // (i), (ii): |λ| = (a + h)/ℓ + ℓm/2 ≥ (a + h)/ℓ.
    let a_bound = widen(ell * lambda_max * bound_scale) - h;
    if a_bound >= T::zero() {
        let a_max = a_bound.floor().to_u64().unwrap_or(0);
        for a in 0..=a_max {
            let mult = binomial(mu + a, a)?;
            let offset = ell * mr * half;
            let radical = (T::from_count(a as usize) + h) / ell;
            let idx = vec![(IndexName::A, int(a))];
            entries.push(SpectrumEntry::new(ValueParts { offset, radical }, mult, Family::BergerI, idx.clone()));
            entries.push(SpectrumEntry::new(
                ValueParts { offset: sign_ii * offset, radical: sign_ii * radical },
                mult,
                Family::BergerII,
                idx,
            ));
        }
    }

    // (iii): |λ| ≤ Λ forces √(X² + 4P) ≤ Λ + ℓ/2, hence
    // P = (m−j+a₁)(j+1+a₂) ≤ (Λ + ℓ/2)²/4.
    let reach = widen((lambda_max + ell * half) * bound_scale);
    let p_max = reach * reach / T::c(4.0);
    for j in 0..mu {
        let jr = T::from_count(j as usize);
        let sign_j = if j % 2 == 0 { T::one() } else { -T::one() };
        let offset = sign_j * ell * half;
        let mut a1 = 0u64;
        while T::from_count((mu - j + a1) as usize) * T::from_count((j + 1) as usize) <= p_max {
            let f1 = T::from_count((mu - j + a1) as usize);
            let mut a2 = 0u64;
            while f1 * T::from_count((j + 1 + a2) as usize) <= p_max {
                let x = ell * half * (mr - T::c(2.0) * jr - T::one())
                    + (T::from_count(a1 as usize) - T::from_count(a2 as usize) + (mr - T::one()) * half - jr) / ell;
                let p = T::c(4.0) * f1 * T::from_count((j + 1 + a2) as usize);
                let rad = (x * x + p).sqrt();
                let mult = berger_iii_multiplicity(mu, a1, a2, j)?;
                let idx = vec![(IndexName::A1, int(a1)), (IndexName::A2, int(a2)), (IndexName::J, int(j))];
                entries.push(SpectrumEntry::new(ValueParts { offset, radical: rad }, mult, Family::BergerIIIPlus, idx.clone()));
                entries.push(SpectrumEntry::new(ValueParts { offset, radical: -rad }, mult, Family::BergerIIIMinus, idx));
                a2 += 1;
            }
            a1 += 1;
        }
    }
    Ok(Spectrum::from_entries(manifold, lambda_max, entries))
}

/// Dirac spectrum of `CP^m` for odd `m`.
pub fn cpm_spectrum<T: Real>(m: u32, lambda_max: T) -> Result<Spectrum<T>> {
    cpm_spectrum_bounded(m, lambda_max, T::one())
}

pub fn cpm_spectrum_bounded<T: Real>(m: u32, lambda_max: T, bound_scale: T) -> Result<Spectrum<T>> {
    if m % 2 == 0 {
        return Err(Error::NonSpin(m));
    }
    check_cutoff(lambda_max)?;
    let manifold = Manifold::ComplexProjective { m };
    let mut entries = Vec::new();
    if lambda_max < T::zero() {
        return Ok(Spectrum { manifold, lambda_max, entries });
    }
    let mu = m as u64;
    let h = (mu + 1) / 2;
    let w = (mu - 1) / 2;
    // 2√((a₁+h)(a₂+h)) ≤ Λ.
    let reach = widen(lambda_max * bound_scale);
    let p_max = reach * reach / T::c(4.0);
    let mut a1 = 0u64;
    while T::from_count((a1 + h) as usize) * T::from_count((a1.saturating_sub(w) + h) as usize) <= p_max {
        for a2 in a1.saturating_sub(w)..=(a1 + w) {
            let p = T::from_count((a1 + h) as usize) * T::from_count((a2 + h) as usize);
            if p > p_max {
                continue;
            }
            let rad = T::c(2.0) * p.sqrt();
            let mult = cpm_multiplicity(m, a1, a2)?;
            let idx = vec![(IndexName::A1, int(a1)), (IndexName::A2, int(a2))];
            entries.push(SpectrumEntry::new(ValueParts { offset: T::zero(), radical: rad }, mult, Family::CpmPlus, idx.clone()));
            entries.push(SpectrumEntry::new(ValueParts { offset: T::zero(), radical: -rad }, mult, Family::CpmMinus, idx));
        }
        a1 += 1;
    }
    Ok(Spectrum::from_entries(manifold, lambda_max, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_sphere_first_values() {
        let s = berger_spectrum(1, 1.0, 4.0).unwrap();
        let i0: Vec<_> = s.of_family(Family::BergerI).collect();
        assert_eq!(i0[0].value, 1.5);
        assert_eq!(i0[0].multiplicity, 1);
        let plus = s
            .of_family(Family::BergerIIIPlus)
            .find(|e| e.indices == vec![(IndexName::A1, int(0)), (IndexName::A2, int(0)), (IndexName::J, int(0))])
            .unwrap();
        assert_eq!(plus.value, 2.5);
        assert_eq!(plus.multiplicity, 2);
        let minus = s.of_family(Family::BergerIIIMinus).find(|e| e.indices == plus.indices).unwrap();
        assert_eq!(minus.value, -1.5);
    }

    #[test]
    fn cp1_and_cp3() {
        let s = cpm_spectrum(1, 20.0).unwrap();
        for e in s.of_family(Family::CpmPlus) {
            let a = e.index(IndexName::A1).unwrap();
            assert_eq!(a, e.index(IndexName::A2).unwrap());
            let a = a.to_integer() as f64;
            assert_eq!(e.value, 2.0 * (a + 1.0));
            assert_eq!(e.multiplicity as f64, 2.0 * (a + 1.0));
        }
        let s = cpm_spectrum(3, 4.5).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.entries[0].value, -4.0);
        assert_eq!(s.entries[1].value, 4.0);
        assert!(s.entries.iter().all(|e| e.multiplicity == 6));
        assert!(matches!(cpm_spectrum::<f64>(2, 10.0), Err(Error::NonSpin(2))));
    }

    #[test]
    fn exact_multiplicities() {
        assert_eq!(cpm_multiplicity(3, 0, 0).unwrap(), 6);
        assert_eq!(berger_iii_multiplicity(3, 0, 0, 1).unwrap(), 6);
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert!(cpm_multiplicity(3, 0, 2).is_err());
    }

    #[test]
    fn berger_parameter_checks() {
        assert!(berger_spectrum(1, 0.0, 1.0).is_err());
        assert!(berger_spectrum(0, 1.0, 1.0).is_err());
    }
}
