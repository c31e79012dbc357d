//! The fiber part of the Heisenberg Dirac operator on `H_τ ⊗ ℂ²`.
//!
//! In the unnormalized Hermite basis the operator splits into 2×2 blocks
//! plus one 1×1 block; [`fiber_block_matrix`] builds those. Independently,
//! [`fiber_operator_fd`] discretizes the two-component differential operator
//!
//! ```text
//! [ −2πτ/T − d²T/4             i d (d/dt − 2πτ t) ]
//! [ i d (d/dt + 2πτ t)        2πτ/T − d²T/4       ]
//! ```
//!
//! on a truncated interval without using any Hermite machinery.

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Matrix};
use crate::oracle::eigen::symmetric_tridiagonal_eigenvalues;
use crate::scalar::{ratio_to_real, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct FiberBlock<T> {
    pub tau: Rational64,
    pub k: u64,
    pub d: T,
    pub t: T,
    /// 1×1 for the lowest mode, 2×2 otherwise.
    pub matrix: CMatrix<T>,
    /// Eigenvalues from the quadratic formula, in the order (+, −) of the root.
    pub eigenvalues: Vec<Complex<T>>,
}

impl<T: Real> FiberBlock<T> {
    /// Real parts of the eigenvalues, ascending.
    pub fn real_eigenvalues(&self) -> Vec<T> {
        let mut v: Vec<T> = self.eigenvalues.iter().map(|z| z.re).collect();
        v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        v
    }

    pub fn max_imaginary_part(&self) -> T {
        self.eigenvalues.iter().map(|z| z.im.abs()).fold(T::zero(), T::max)
    }
}

/// Closed-form block eigenvalues `−d²T/4 ± 2√(π²τ²/T² + kπd²|τ|)` (ascending),
/// or the single value `−2π|τ|/T − d²T/4` for `k = 0`.
pub fn analytic_block_eigenvalues<T: Real>(tau: Rational64, k: u64, d: T, t: T) -> Vec<T> {
    let pi = T::PI();
    let shift = d * d * t / T::c(4.0);
    let at = ratio_to_real::<T>(&tau.abs());
    if k == 0 {
        return vec![-T::c(2.0) * pi * at / t - shift];
    }
    let root = T::c(2.0) * (pi * pi * at * at / (t * t) + T::from_count(k as usize) * pi * d * d * at).sqrt();
    vec![-shift - root, -shift + root]
}

/// Builds the block acting on the span of `u_k` and `u_{k−1}` (with `τ > 0`)
/// or of `u_{k−1}` and `u_k` (with `τ < 0`).
pub fn fiber_block_matrix<T: Real>(tau: Rational64, k: u64, d: T, t: T) -> Result<FiberBlock<T>> {
    if tau.is_zero() {
        return Err(Error::Parameter("fiber block needs τ ≠ 0".into()));
    }
    if !(d > T::zero()) || !(t > T::zero()) {
        return Err(Error::Parameter("fiber block needs d > 0 and T > 0".into()));
    }
    let pi = T::PI();
    let shift = d * d * t / T::c(4.0);
    let at = ratio_to_real::<T>(&tau.abs());
    let w = T::c(2.0) * pi * at / t;
    let i = Complex::new(T::zero(), T::one());
    if k == 0 {
        let v = Complex::from(-w - shift);
        return Ok(FiberBlock { tau, k, d, t, matrix: CMatrix::from_rows(vec![vec![v]]), eigenvalues: vec![v] });
    }
    let q = d * (T::c(2.0) * pi * at).sqrt();
    let kk = T::from_count(k as usize);
    let rows = if tau.is_positive() {
        vec![
            vec![Complex::from(-w - shift), i * q],
            vec![-i * (T::c(2.0) * kk * q), Complex::from(w - shift)],
        ]
    } else {
        vec![
            vec![Complex::from(w - shift), -i * (T::c(2.0) * kk * q)],
            vec![i * q, Complex::from(-w - shift)],
        ]
    };
    let matrix = CMatrix::from_rows(rows);
    let (a, b, c, e) = (matrix[(0, 0)], matrix[(0, 1)], matrix[(1, 0)], matrix[(1, 1)]);
    let half = T::c(0.5);
    let mean = (a + e) * half;
    let gap = (a - e) * half;
    let root = (gap * gap + b * c).sqrt();
    let eigenvalues = vec![mean + root, mean - root];
    Ok(FiberBlock { tau, k, d, t, matrix, eigenvalues })
}

/// Grid half-width `(8 + 2√k_max)/√(2π|τ|)` covering the Gaussian envelope of
/// `u_0..u_{k_max}`.
pub fn default_half_width<T: Real>(tau: T, k_max: usize) -> T {
    (T::c(8.0) + T::c(2.0) * T::from_count(k_max).sqrt()) / (T::c(2.0) * T::PI() * tau.abs()).sqrt()
}

/// Finite-difference discretization of the fiber operator for `τ > 0`.
///
/// The upper component lives on all `N` grid nodes; the lower component
/// omits the leftmost node. The off-diagonal block is
/// `i d (D₊ − 2πτ t)` with `D₊` the forward difference, and the lower-left
/// block is its adjoint. After the gauge `v ↦ −i v` the matrix is real
/// symmetric, and interleaving `(u₀, v₁, u₁, v₂, …, u_{N−1})` makes it
/// tridiagonal of order `2N − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FdOperator<T> {
    pub n: usize,
    pub half_width: T,
    diag: Vec<T>,
    off: Vec<T>,
}

impl<T: Real> FdOperator<T> {
    pub fn new(tau: T, d: T, t: T, n: usize, half_width: T) -> Result<Self> {
        if n < 100 {
            return Err(Error::Parameter(format!("grid size N = {n} must be at least 100")));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::Parameter("half-width L must be positive".into()));
        }
        if !(tau > T::zero()) {
            return Err(Error::Parameter("finite-difference oracle needs τ > 0".into()));
        }
        if !(d > T::zero()) || !(t > T::zero()) {
            return Err(Error::Parameter("finite-difference oracle needs d > 0 and T > 0".into()));
        }
        let pi = T::PI();
        let h = T::c(2.0) * half_width / T::from_count(n - 1);
        let node = |j: usize| -half_width + h * T::from_count(j);
        let shift = d * d * t / T::c(4.0);
        let w = T::c(2.0) * pi * tau / t;
        let (a, b) = (-w - shift, w - shift);
        let size = 2 * n - 1;
        let mut diag = Vec::with_capacity(size);
        let mut off = Vec::with_capacity(size - 1);
        for j in 0..n {
            diag.push(a);
            if j + 1 < n {
                diag.push(b);
                // u_j – v_{j+1}: forward-difference neighbour.
                off.push(d / h);
                // v_{j+1} – u_{j+1}: diagonal of D₊ − 2πτ t.
                off.push(d * (-T::one() / h - T::c(2.0) * pi * tau * node(j + 1)));
            }
        }
        Ok(Self { n, half_width, diag, off })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diag
    }

    pub fn off_diagonal(&self) -> &[T] {
        &self.off
    }

    /// The real symmetric (gauged, interleaved) matrix.
    pub fn to_dense(&self) -> Matrix<T> {
        let m = self.order();
        let mut a = Matrix::zeros(m, m);
        for i in 0..m {
            a[(i, i)] = self.diag[i];
        }
        for (i, &x) in self.off.iter().enumerate() {
            a[(i, i + 1)] = x;
            a[(i + 1, i)] = x;
        }
        a
    }

    /// The operator before the gauge, in block order `(u₀..u_{N−1}, v₁..v_{N−1})`.
    pub fn to_dense_complex(&self) -> CMatrix<T> {
        let n = self.n;
        let m = self.order();
        let mut a = CMatrix::zeros(m, m);
        let i = Complex::new(T::zero(), T::one());
        for j in 0..n {
            a[(j, j)] = Complex::from(self.diag[2 * j]);
        }
        for j in 1..n {
            a[(n + j - 1, n + j - 1)] = Complex::from(self.diag[2 * j - 1]);
        }
        for (p, &x) in self.off.iter().enumerate() {
            // Position p couples interleaved indices p and p+1.
            let (u, v) = if p % 2 == 0 { (p / 2, p / 2 + 1) } else { (p / 2 + 1, p / 2 + 1) };
            let (r, c) = (u, n + v - 1);
            a[(r, c)] = i * x;
            a[(c, r)] = -i * x;
        }
        a
    }

    /// All eigenvalues, ordered by increasing `|λ|`.
    pub fn eigenvalues_by_magnitude(&self) -> Result<Vec<T>> {
        let mut ev = symmetric_tridiagonal_eigenvalues(&self.diag, &self.off)?;
        ev.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).expect("finite").then(a.partial_cmp(b).expect("finite")));
        Ok(ev)
    }
}

/// Eigenvalues of the discretized fiber operator ordered by increasing `|λ|`.
pub fn fiber_operator_fd<T: Real>(tau: T, d: T, t: T, n: usize, half_width: T) -> Result<Vec<T>> {
    FdOperator::new(tau, d, t, n, half_width)?.eigenvalues_by_magnitude()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::eigen::{hermitian_eigenvalues, symmetric_eigen};
    use std::f64::consts::PI;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn block_unit_parameters() {
        let b = fiber_block_matrix(q(1, 1), 1, 1.0, 1.0).unwrap();
        let ev = b.real_eigenvalues();
        let r = 2.0 * (PI * PI + PI).sqrt();
        assert!((ev[0] - (-0.25 - r)).abs() < 1e-12);
        assert!((ev[1] - (-0.25 + r)).abs() < 1e-12);
        assert!((ev[1] - 6.9642).abs() < 1e-4 && (ev[0] + 7.4642).abs() < 1e-4);
        assert_eq!(b.matrix[(0, 0)].re, -2.0 * PI - 0.25);
        assert_eq!(b.max_imaginary_part(), 0.0);
    }

    #[test]
    fn lowest_mode() {
        let b = fiber_block_matrix(q(1, 1), 0, 1.0, 1.0).unwrap();
        assert_eq!(b.matrix.rows(), 1);
        assert_eq!(b.real_eigenvalues(), vec![-2.0 * PI - 0.25]);
    }

    #[test]
    fn block_is_not_hermitian() {
        let b = fiber_block_matrix(q(3, 2), 4, 0.5, 2.0).unwrap();
        assert!(b.matrix.hermitian_defect() > 0.1);
    }

    #[test]
    fn negative_tau_has_same_eigenvalues() {
        for k in 0..5u64 {
            let p = fiber_block_matrix(q(2, 1), k, 1.3, 0.7).unwrap().real_eigenvalues();
            let m = fiber_block_matrix(q(-2, 1), k, 1.3, 0.7).unwrap().real_eigenvalues();
            for (a, b) in p.iter().zip(&m) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_zero_tau() {
        assert!(fiber_block_matrix::<f64>(q(0, 1), 1, 1.0, 1.0).is_err());
    }

    #[test]
    fn fd_structure() {
        let op = FdOperator::new(1.0, 1.0, 1.0, 120, 5.0).unwrap();
        assert_eq!(op.order(), 239);
        let c = op.to_dense_complex();
        assert!(c.hermitian_defect() <= 1e-14);
        let fast = op.eigenvalues_by_magnitude().unwrap();
        let mut dense = hermitian_eigenvalues(&c).unwrap();
        dense.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
        for (a, b) in fast.iter().zip(&dense).take(10) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
        let real = symmetric_eigen(&op.to_dense()).unwrap();
        let mut rv = real.values.clone();
        rv.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
        assert!((rv[0] - fast[0]).abs() < 1e-9);
    }

    #[test]
    fn fd_parameter_errors() {
        assert!(FdOperator::new(1.0, 1.0, 1.0, 99, 5.0).is_err());
        assert!(FdOperator::new(1.0, 1.0, 1.0, 200, 0.0).is_err());
        assert!(FdOperator::new(-1.0, 1.0, 1.0, 200, 5.0).is_err());
    }

    #[test]
    fn default_width() {
        let l: f64 = default_half_width(1.0, 4);
        assert!((l - 12.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
    }
}
