//! Behaviour of spectra as the circle fiber shrinks.
//!
//! For the Heisenberg manifold the fiber length is `T`, so the scale
//! parameter is `ℓ = T/(2π)`. Bounded families are paired with the base
//! spectrum by index; every other entry is reported through `ℓ·λ` and the
//! nearest point of the limit lattice (`ℤ` for projectable spin structures,
//! `ℤ + ½` otherwise).

use std::collections::HashMap;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectra::{
    berger_spectrum, cpm_spectrum, heisenberg_spectrum, torus_spectrum, Family, HeisenbergGeometry, IndexName, SpinDelta,
    Spectrum, SpectrumEntry,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitLattice {
    Integer,
    HalfInteger,
}

impl LimitLattice {
    /// Nearest lattice point to `x`, as an exact rational.
    pub fn nearest<T: Real>(self, x: T) -> Rational64 {
        match self {
            LimitLattice::Integer => Rational64::from_integer(x.round().to_i64().unwrap_or(0)),
            LimitLattice::HalfInteger => {
                let n = (x - T::c(0.5)).round().to_i64().unwrap_or(0);
                Rational64::new(2 * n + 1, 2)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchedPair<T> {
    pub bundle: SpectrumEntry<T>,
    pub base: SpectrumEntry<T>,
    pub gap: T,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergentEntry<T> {
    pub entry: SpectrumEntry<T>,
    /// `ℓ·λ`.
    pub scaled: T,
    pub nearest: Rational64,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseSlice<T> {
    /// `T` for Heisenberg manifolds, `ℓ` for Berger spheres.
    pub parameter: T,
    pub ell: T,
    pub matched: Vec<MatchedPair<T>>,
    pub divergent: Vec<DivergentEntry<T>>,
    /// Entries of a bounded family with no partner in the base spectrum.
    pub unmatched: Vec<SpectrumEntry<T>>,
    pub total_entries: usize,
}

impl<T: Real> CollapseSlice<T> {
    pub fn classified_once(&self) -> bool {
        self.matched.len() + self.divergent.len() + self.unmatched.len() == self.total_entries
    }

    pub fn min_abs_divergent(&self) -> Option<T> {
        self.divergent.iter().map(|d| d.entry.value.abs()).reduce(T::min)
    }

    pub fn max_residual(&self) -> T {
        self.divergent.iter().map(|d| d.residual).fold(T::zero(), T::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseReport<T> {
    pub lattice: LimitLattice,
    pub slices: Vec<CollapseSlice<T>>,
    /// Every entry of every slice classified exactly once.
    pub all_classified: bool,
    /// Every bounded-family entry found a partner within tolerance.
    pub all_matched: bool,
}

impl<T: Real> CollapseReport<T> {
    fn assemble(lattice: LimitLattice, slices: Vec<CollapseSlice<T>>) -> Self {
        let all_classified = slices.iter().all(CollapseSlice::classified_once);
        let all_matched =
            slices.iter().all(|s| s.unmatched.is_empty() && s.matched.iter().all(|m| m.within_tolerance));
        Self { lattice, slices, all_classified, all_matched }
    }
}

fn check_decreasing<T: Real>(seq: &[T], what: &str) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::Parameter(format!("{what} sequence is empty")));
    }
    if seq.iter().any(|x| !(*x > T::zero()) || !x.is_finite()) {
        return Err(Error::Parameter(format!("{what} values must be positive")));
    }
    if seq.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Parameter(format!("{what} sequence must be strictly decreasing")));
    }
    Ok(())
}

fn divergent<T: Real>(entry: &SpectrumEntry<T>, ell: T, lattice: LimitLattice) -> DivergentEntry<T> {
    let scaled = ell * entry.value;
    let nearest = lattice.nearest(scaled);
    let target = T::c(*nearest.numer() as f64) / T::c(*nearest.denom() as f64);
    DivergentEntry { entry: entry.clone(), scaled, nearest, residual: (scaled - target).abs() }
}

fn partner_family(f: Family) -> Option<Family> {
    match f {
        Family::AaPlus => Some(Family::TorusPlus),
        Family::AaMinus => Some(Family::TorusMinus),
        Family::BergerIIIPlus => Some(Family::CpmPlus),
        Family::BergerIIIMinus => Some(Family::CpmMinus),
        _ => None,
    }
}

type BaseIndex<'a, T> = HashMap<(Family, &'a [(IndexName, Rational64)]), &'a SpectrumEntry<T>>;

fn index_base<T: Real>(base: &Spectrum<T>) -> BaseIndex<'_, T> {
    base.entries.iter().map(|b| ((b.family, b.indices.as_slice()), b)).collect()
}

fn pair_up<T: Real>(
    entry: &SpectrumEntry<T>,
    base: &BaseIndex<'_, T>,
    indices: &[(IndexName, Rational64)],
    tol: T,
) -> Option<MatchedPair<T>> {
    let family = partner_family(entry.family)?;
    let partner = *base.get(&(family, indices))?;
    let gap = entry.gap(partner);
    Some(MatchedPair { bundle: entry.clone(), base: partner.clone(), gap, within_tolerance: gap <= tol })
}

/// Collapse of `M(r, d, T)` along a decreasing sequence of `T`.
pub fn heisenberg_collapse_report<T: Real>(
    r: u32,
    d: T,
    delta: SpinDelta,
    t_sequence: &[T],
    lambda_max: T,
) -> Result<CollapseReport<T>> {
    delta.check_admissible(r)?;
    check_decreasing(t_sequence, "T")?;
    let lattice = if delta.delta3.is_plus() { LimitLattice::Integer } else { LimitLattice::HalfInteger };
    let mut slices = Vec::with_capacity(t_sequence.len());
    for &t in t_sequence {
        let geom = HeisenbergGeometry::new(r, d, t)?;
        let spec = heisenberg_spectrum(&geom, delta, lambda_max)?;
        let s = geom.shift();
        let ell = t / (T::c(2.0) * T::PI());
        // A.a values reach radius Λ + s on the torus.
        let base = torus_spectrum(r, d, delta.base(), lambda_max + s + T::one())?;
        let base = index_base(&base);
        let tol = T::c(10.0) * s;
        let mut slice = CollapseSlice {
            parameter: t,
            ell,
            matched: Vec::new(),
            divergent: Vec::new(),
            unmatched: Vec::new(),
            total_entries: spec.len(),
        };
        for e in &spec.entries {
            if e.family.is_heisenberg_torus_like() {
                match pair_up(e, &base, &e.indices, tol) {
                    Some(p) => slice.matched.push(p),
                    None => slice.unmatched.push(e.clone()),
                }
            } else {
                slice.divergent.push(divergent(e, ell, lattice));
            }
        }
        slices.push(slice);
    }
    Ok(CollapseReport::assemble(lattice, slices))
}

/// Collapse of the Berger sphere `S^{2m+1}` along a decreasing sequence of `ℓ`.
/// For odd `m` the family-(iii) entries with `j = a₁ − a₂ + (m−1)/2` are
/// paired with `CP^m`.
pub fn berger_collapse_report<T: Real>(m: u32, ell_sequence: &[T], lambda_max: T) -> Result<CollapseReport<T>> {
    if m == 0 {
        return Err(Error::Parameter("m must be a positive integer".into()));
    }
    check_decreasing(ell_sequence, "ℓ")?;
    let odd = m % 2 == 1;
    let lattice = if odd { LimitLattice::Integer } else { LimitLattice::HalfInteger };
    let w = Rational64::new(m as i64 - 1, 2);
    let base_spec = if odd { Some(cpm_spectrum(m, T::c(2.0) * lambda_max.abs() + T::one())?) } else { None };
    let base = base_spec.as_ref().map(index_base);
    let mut slices = Vec::with_capacity(ell_sequence.len());
    for &ell in ell_sequence {
        let spec = berger_spectrum(m, ell, lambda_max)?;
        let tol = ell + ell * ell * T::from_count((m * m) as usize);
        let mut slice = CollapseSlice {
            parameter: ell,
            ell,
            matched: Vec::new(),
            divergent: Vec::new(),
            unmatched: Vec::new(),
            total_entries: spec.len(),
        };
        for e in &spec.entries {
            let converging = match (&base, e.index(IndexName::A1), e.index(IndexName::A2), e.index(IndexName::J)) {
                (Some(_), Some(a1), Some(a2), Some(j)) => a1 - a2 + w == j,
                _ => false,
            };
            if converging {
                let base = base.as_ref().expect("odd m");
                let idx = vec![
                    (IndexName::A1, e.index(IndexName::A1).expect("a1")),
                    (IndexName::A2, e.index(IndexName::A2).expect("a2")),
                ];
                match pair_up(e, base, &idx, tol) {
                    Some(p) => slice.matched.push(p),
                    None => slice.unmatched.push(e.clone()),
                }
            } else {
                slice.divergent.push(divergent(e, ell, lattice));
            }
        }
        slices.push(slice);
    }
    Ok(CollapseReport::assemble(lattice, slices))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaledLimitRow<T> {
    pub ell: T,
    pub scaled: T,
    pub nearest: Rational64,
    pub residual: T,
}

/// Tabulates `ℓ·λ(ℓ)` against the nearest limit-lattice point.
pub fn scaled_limit_check<T: Real, F: Fn(T) -> T>(
    family: F,
    ells: &[T],
    lattice: LimitLattice,
) -> Vec<ScaledLimitRow<T>> {
    ells.iter()
        .map(|&ell| {
            let scaled = ell * family(ell);
            let nearest = lattice.nearest(scaled);
            let target = T::c(*nearest.numer() as f64) / T::c(*nearest.denom() as f64);
            ScaledLimitRow { ell, scaled, nearest, residual: (scaled - target).abs() }
        })
        .collect()
}

/// True if residuals do not increase along the table.
pub fn residuals_monotone<T: Real>(rows: &[ScaledLimitRow<T>]) -> bool {
    rows.windows(2).all(|w| w[1].residual <= w[0].residual)
}
