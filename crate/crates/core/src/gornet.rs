//! Dirac operators on one-dimensional representations of the
//! seven-dimensional nilpotent family, and the first-order variation of their
//! determinant along the automorphism family `φ_s`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::cliff::{build_clifford_rep, CliffordRep};
use crate::error::{Error, Result};
use crate::liealg::{christoffel, gornet_algebra, gornet_automorphism, ChristoffelTensor, MetricLieAlgebra};
use crate::linalg::{imag_unit, CMatrix};
use crate::oracle::eigen::hermitian_eigenvalues;
use crate::scalar::Real;

/// A functional on the algebra vanishing on the commutator ideal, given by
/// its values on `X₁..X₄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CotangentSample<T> {
    pub t: [T; 4],
}

impl<T: Real> CotangentSample<T> {
    pub fn new(t1: T, t2: T, t3: T, t4: T) -> Self {
        Self { t: [t1, t2, t3, t4] }
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        Self { t: v.map(|x| T::c(x as f64)) }
    }

    /// Values on the full basis `(X₁..X₄, Z₁, Z₂, 𝒵)`.
    pub fn on_basis(&self) -> [T; 7] {
        [self.t[0], self.t[1], self.t[2], self.t[3], T::zero(), T::zero(), T::zero()]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberDirac<T> {
    pub s: T,
    pub matrix: CMatrix<T>,
}

impl<T: Real> FiberDirac<T> {
    pub fn determinant(&self) -> Result<Complex<T>> {
        self.matrix.determinant()
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        hermitian_eigenvalues(&self.matrix)
    }
}

/// Clifford data, connection and the endomorphism
/// `A = ¼ Σ_{i,j,k} Γ[i][j][k] γ(E_i)γ(E_j)γ(E_k)`.
#[derive(Debug, Clone)]
pub struct GornetFamily<T> {
    pub algebra: MetricLieAlgebra<T>,
    pub christoffel: ChristoffelTensor<T>,
    pub rep: CliffordRep<T>,
    pub a: CMatrix<T>,
}

impl<T: Real> GornetFamily<T> {
    pub fn new() -> Result<Self> {
        Self::with_rep(build_clifford_rep(7)?)
    }

    /// Uses a caller-supplied `Cl(7)` representation.
    pub fn with_rep(rep: CliffordRep<T>) -> Result<Self> {
        if rep.n() != 7 {
            return Err(Error::Precondition(format!("need a Cl(7) representation, got n = {}", rep.n())));
        }
        let algebra = gornet_algebra::<T>();
        let christoffel = christoffel(&algebra);
        let a = build_a(&christoffel, &rep);
        Ok(Self { algebra, christoffel, rep, a })
    }

    /// `τ_s(X_i) = τ(φ_s⁻¹ X_i)` for `i = 1..4`.
    pub fn tau_s(&self, tau: &CotangentSample<T>, s: T) -> Result<[T; 4]> {
        let inv = gornet_automorphism(s).inverse()?;
        let full = tau.on_basis();
        let mut out = [T::zero(); 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..7).map(|a| full[a] * inv[(a, i)]).sum();
        }
        Ok(out)
    }

    /// `A + 2πi Σ_{i≤4} τ_s(X_i) γ(E_i)`.
    pub fn fiber_dirac(&self, tau: &CotangentSample<T>, s: T) -> Result<FiberDirac<T>> {
        let ts = self.tau_s(tau, s)?;
        let two_pi_i = imag_unit::<T>() * (T::c(2.0) * T::PI());
        let mut m = self.a.clone();
        for (i, &ti) in ts.iter().enumerate() {
            if ti != T::zero() {
                m = &m + &self.rep.gamma(i).scale(two_pi_i * ti);
            }
        }
        Ok(FiberDirac { s, matrix: m })
    }

    pub fn determinant_at(&self, tau: &CotangentSample<T>, s: T) -> Result<T> {
        Ok(self.fiber_dirac(tau, s)?.determinant()?.re)
    }

    /// Central difference `(det(h) − det(−h))/(2h)`.
    pub fn delta_tau_numeric(&self, tau: &CotangentSample<T>, h: T) -> Result<T> {
        if !(h >= T::c(1e-6) && h <= T::c(1e-3)) {
            return Err(Error::Parameter("difference step h must lie in [1e-6, 1e-3]".into()));
        }
        let plus = self.determinant_at(tau, h)?;
        let minus = self.determinant_at(tau, -h)?;
        Ok((plus - minus) / (h + h))
    }

    /// Compares the characteristic polynomial of `A` with that of the
    /// reference matrix.
    pub fn compare_reference(&self, tol: T) -> Result<ReferenceComparison<T>> {
        let computed = self.a.characteristic_polynomial()?;
        let reference_matrix = reference_a::<T>();
        let reference = reference_matrix.characteristic_polynomial()?;
        let negated = (-&reference_matrix).characteristic_polynomial()?;
        let diff = |p: &[Complex<T>]| {
            computed.iter().zip(p).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max)
        };
        let max_diff = diff(&reference);
        let max_diff_negated = diff(&negated);
        Ok(ReferenceComparison {
            computed,
            reference,
            max_diff,
            max_diff_negated,
            matches: max_diff <= tol,
            matches_negated: max_diff_negated <= tol,
        })
    }

    /// Lattice scan over `τ ∈ offset + {−B..B}⁴`: every point where the
    /// closed-form `δ_τ` is nonzero and some eigenvalue of the fiber operator
    /// moves by more than `eig_tol` between `s = 0` and `s = s_probe`.
    pub fn deformation_scan(&self, b: u32, s_probe: T, eig_tol: T, offset: Option<[T; 4]>) -> Result<Vec<Witness<T>>> {
        if b == 0 {
            return Err(Error::Parameter("scan box B must be at least 1".into()));
        }
        if s_probe == T::zero() || !s_probe.is_finite() {
            return Err(Error::Parameter("probe parameter s must be finite and nonzero".into()));
        }
        let off = offset.unwrap_or([T::zero(); 4]);
        let bi = b as i64;
        let points: Vec<[i64; 4]> = (-bi..=bi)
            .flat_map(|a| (-bi..=bi).flat_map(move |c| (-bi..=bi).flat_map(move |d| (-bi..=bi).map(move |e| [a, c, d, e]))))
            .collect();
        let results: Vec<Result<Option<Witness<T>>>> = points
            .par_iter()
            .map(|p| {
                let tau = CotangentSample { t: [0, 1, 2, 3].map(|i| T::c(p[i] as f64) + off[i]) };
                let delta = delta_tau_poly(&tau);
                if delta == T::zero() {
                    return Ok(None);
                }
                let d0 = self.fiber_dirac(&tau, T::zero())?;
                let ds = self.fiber_dirac(&tau, s_probe)?;
                let e0 = d0.eigenvalues()?;
                let es = ds.eigenvalues()?;
                let displacement = e0.iter().zip(&es).map(|(x, y)| (*x - *y).abs()).fold(T::zero(), T::max);
                if displacement <= eig_tol {
                    return Ok(None);
                }
                Ok(Some(Witness {
                    lattice_point: *p,
                    tau,
                    delta_poly: delta,
                    displacement,
                    det_at_zero: d0.determinant()?.re,
                    det_at_probe: ds.determinant()?.re,
                }))
            })
            .collect();
        let mut out = Vec::new();
        for r in results {
            if let Some(w) = r? {
                out.push(w);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceComparison<T> {
    /// Coefficients `[1, c₁, …, c₈]` of `det(x·Id − A)`.
    pub computed: Vec<Complex<T>>,
    pub reference: Vec<Complex<T>>,
    pub max_diff: T,
    /// Distance to the characteristic polynomial of minus the reference matrix.
    pub max_diff_negated: T,
    pub matches: bool,
    pub matches_negated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub lattice_point: [i64; 4],
    pub tau: CotangentSample<T>,
    pub delta_poly: T,
    pub displacement: T,
    pub det_at_zero: T,
    pub det_at_probe: T,
}

/// `¼ Σ Γ[i][j][k] γ_iγ_jγ_k`.
pub fn build_a<T: Real>(gamma: &ChristoffelTensor<T>, rep: &CliffordRep<T>) -> CMatrix<T> {
    let n = gamma.dim();
    let dim = rep.spinor_dim();
    let mut a = CMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            let gij = rep.gamma(i) * rep.gamma(j);
            for k in 0..n {
                let g = gamma.get(i, j, k);
                if g == T::zero() {
                    continue;
                }
                let term = &gij * rep.gamma(k);
                a = &a + &term.scale_real(g);
            }
        }
    }
    a.scale_real(T::c(0.25))
}

/// Reference 8×8 matrix of `A` in an unspecified spinor basis.
pub fn reference_a<T: Real>() -> CMatrix<T> {
    let r = |x: f64| Complex::new(T::c(x), T::zero());
    let i = |x: f64| Complex::new(T::zero(), T::c(x));
    let z = r(0.0);
    let rows = vec![
        vec![r(-2.0), z, z, r(1.0), r(2.0), i(1.0), i(1.0), r(-2.0)],
        vec![z, z, r(1.0), z, i(-1.0), z, z, i(-1.0)],
        vec![z, r(1.0), z, z, i(1.0), z, z, i(1.0)],
        vec![r(1.0), z, z, r(2.0), r(2.0), i(-1.0), i(-1.0), r(-2.0)],
        vec![r(2.0), i(1.0), i(-1.0), r(2.0), r(2.0), z, z, r(-1.0)],
        vec![i(-1.0), z, z, i(1.0), z, z, r(-1.0), z],
        vec![i(-1.0), z, z, i(1.0), z, r(-1.0), z, z],
        vec![r(-2.0), i(1.0), i(-1.0), r(-2.0), r(-1.0), z, z, r(-2.0)],
    ];
    CMatrix::from_rows(rows).scale_real(T::c(0.25))
}

/// Closed form of `δ_τ`.
pub fn delta_tau_poly<T: Real>(tau: &CotangentSample<T>) -> T {
    let [t1, t2, t3, t4] = tau.t;
    let pi = T::PI();
    let p2 = pi * pi;
    let p4 = p2 * p2;
    let c = |x: f64| T::c(x);
    let sq = |x: T| x * x;
    let quartic = c(4096.0) * p4 * (sq(sq(t1)) + sq(sq(t2)) + sq(sq(t3)) + sq(sq(t4)))
        + c(8192.0)
            * p4
            * (sq(t1) * sq(t2)
                + sq(t1) * sq(t3)
                + sq(t2) * sq(t3)
                + sq(t1) * sq(t4)
                + sq(t2) * sq(t4)
                + sq(t3) * sq(t4));
    let quadratic = c(512.0) * p2 * t3 * t1
        + c(128.0) * p2 * sq(t4)
        + c(512.0) * p2 * t4 * t2
        + c(128.0) * p2 * sq(t2)
        + c(128.0) * p2 * sq(t1)
        + c(128.0) * p2 * sq(t3);
    -(p2 / c(64.0)) * (-t1 * t2 + t3 * t4) * (quartic + quadratic + T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn family() -> GornetFamily<f64> {
        GornetFamily::new().unwrap()
    }

    #[test]
    fn a_is_hermitian_and_traceless() {
        let g = family();
        assert!(g.a.hermitian_defect() < 1e-14);
        assert!(g.a.trace().norm() < 1e-13);
    }

    #[test]
    fn reference_spot_entries() {
        let p = reference_a::<f64>();
        assert_eq!(p[(0, 0)], Complex::new(-0.5, 0.0));
        assert_eq!(p[(0, 3)], Complex::new(0.25, 0.0));
        assert_eq!(p[(0, 5)], Complex::new(0.0, 0.25));
        assert!(p.hermitian_defect() == 0.0);
    }

    #[test]
    fn tau_s_at_zero_is_tau() {
        let g = family();
        let tau = CotangentSample::new(1.5, -2.0, 0.25, 3.0);
        assert_eq!(g.tau_s(&tau, 0.0).unwrap(), tau.t);
    }

    #[test]
    fn fiber_dirac_hermitian() {
        let g = family();
        for (tau, s) in [([1, 1, 0, 0], 0.3), ([2, -1, 1, 1], 1.1), ([0, 0, 1, -2], -0.4)] {
            let d = g.fiber_dirac(&CotangentSample::from_ints(tau), s).unwrap();
            assert!(d.matrix.hermitian_defect() < 1e-12);
            let det = d.determinant().unwrap();
            assert!(det.im.abs() <= 1e-9 * det.norm().max(1.0));
        }
    }

    #[test]
    fn poly_values() {
        let v = delta_tau_poly(&CotangentSample::<f64>::new(1.0, 1.0, 0.0, 0.0));
        let expected = 256.0 * PI.powi(6) + 4.0 * PI.powi(4) + PI * PI / 64.0;
        assert!((v - expected).abs() <= 1e-12 * expected);
        assert!((v - 2.465054e5).abs() < 1.0);
        assert_eq!(delta_tau_poly(&CotangentSample::<f64>::new(2.0, 3.0, 6.0, 1.0)), 0.0);
        assert_eq!(delta_tau_poly(&CotangentSample::<f64>::new(1.0, 0.0, 0.0, 0.0)), 0.0);
    }

    #[test]
    fn numeric_matches_poly() {
        let g = family();
        for p in [[1, 1, 0, 0], [1, 2, 0, 1], [2, 1, -1, 1]] {
            let tau = CotangentSample::from_ints(p);
            let num = g.delta_tau_numeric(&tau, 1e-4).unwrap();
            let poly = delta_tau_poly(&tau);
            assert!((num - poly).abs() <= 1e-6 * poly.abs(), "{p:?}: {num} vs {poly}");
        }
        assert!(g.delta_tau_numeric(&CotangentSample::from_ints([1, 1, 0, 0]), 1e-2).is_err());
    }

    #[test]
    fn scan_finds_witnesses() {
        let g = family();
        let w = g.deformation_scan(1, 0.2, 1e-3, None).unwrap();
        assert!(!w.is_empty());
        assert!(w.iter().all(|x| x.delta_poly != 0.0 && x.displacement > 1e-3));
        assert!(g.deformation_scan(0, 0.2, 1e-3, None).is_err());
        assert!(g.deformation_scan(1, 0.0, 1e-3, None).is_err());
    }
}
