//! Complex spinor representations of the Clifford algebras Cl(n), n = 2..8.
//!
//! Conventions: generators are anti-Hermitian and satisfy
//! `γ(E_i)γ(E_j) + γ(E_j)γ(E_i) = −2δ_ij·Id`. The three-dimensional seed is
//!
//! ```text
//! γ(E₁) = [[0, i], [i, 0]],  γ(E₂) = [[0, −1], [1, 0]],  γ(E₃) = [[i, 0], [0, −i]]
//! ```
//!
//! and higher odd dimensions are obtained by the doubling
//! `Cl(2m−1) → Cl(2m+1)`: `γ_k ↦ γ_k ⊗ σ_x`, plus `Id ⊗ iσ_y` and `Id ⊗ iσ_z`.
//! Even dimensions take the first `n` generators of the next odd algebra.
//! In dimension 7 the last generator is negated if necessary so that
//! `γ(E₁)⋯γ(E₇) = −Id`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{imag_unit, CMatrix};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRep<T> {
    n: usize,
    gammas: Vec<CMatrix<T>>,
    /// For odd `n`: the scalar `c` with `γ(E₁)⋯γ(E_n) = c·Id`.
    volume_scalar: Option<Complex<T>>,
}

fn pauli<T: Real>() -> [CMatrix<T>; 3] {
    let o = Complex::<T>::one();
    let z = Complex::<T>::zero();
    let i = imag_unit::<T>();
    [
        CMatrix::from_rows(vec![vec![z, o], vec![o, z]]),
        CMatrix::from_rows(vec![vec![z, -i], vec![i, z]]),
        CMatrix::from_rows(vec![vec![o, z], vec![z, -o]]),
    ]
}

fn seed3<T: Real>() -> Vec<CMatrix<T>> {
    let o = Complex::<T>::one();
    let z = Complex::<T>::zero();
    let i = imag_unit::<T>();
    vec![
        CMatrix::from_rows(vec![vec![z, i], vec![i, z]]),
        CMatrix::from_rows(vec![vec![z, -o], vec![o, z]]),
        CMatrix::from_rows(vec![vec![i, z], vec![z, -i]]),
    ]
}

fn double_odd<T: Real>(gammas: &[CMatrix<T>]) -> Vec<CMatrix<T>> {
    let [sx, sy, sz] = pauli::<T>();
    let i = imag_unit::<T>();
    let id = CMatrix::identity(gammas[0].rows());
    let mut out: Vec<CMatrix<T>> = gammas.iter().map(|g| g.kron(&sx)).collect();
    out.push(id.kron(&sy.scale(i)));
    out.push(id.kron(&sz.scale(i)));
    out
}

fn ordered_product<T: Real>(gammas: &[CMatrix<T>]) -> CMatrix<T> {
    gammas.iter().fold(CMatrix::identity(gammas[0].rows()), |acc, g| &acc * g)
}

/// Returns `Some(c)` when `m = c·Id` exactly up to `tol`.
fn as_scalar<T: Real>(m: &CMatrix<T>, tol: T) -> Option<Complex<T>> {
    let c = m[(0, 0)];
    let diff = m.max_abs_diff(&CMatrix::identity(m.rows()).scale(c));
    (diff <= tol).then_some(c)
}

impl<T: Real> CliffordRep<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Spinor dimension `2^⌊n/2⌋`.
    pub fn spinor_dim(&self) -> usize {
        self.gammas[0].rows()
    }

    pub fn gammas(&self) -> &[CMatrix<T>] {
        &self.gammas
    }

    /// `γ(E_i)` with a zero-based index.
    pub fn gamma(&self, i: usize) -> &CMatrix<T> {
        &self.gammas[i]
    }

    pub fn volume_scalar(&self) -> Option<Complex<T>> {
        self.volume_scalar
    }

    /// Maximum entrywise defect of the Clifford relations and of anti-Hermiticity.
    pub fn relation_defect(&self) -> T {
        let d = self.spinor_dim();
        let mut worst = T::zero();
        for (i, gi) in self.gammas.iter().enumerate() {
            worst = worst.max(gi.anti_hermitian_defect());
            for (j, gj) in self.gammas.iter().enumerate() {
                let anti = &(gi * gj) + &(gj * gi);
                let target = if i == j {
                    CMatrix::identity(d).scale_real(-T::two())
                } else {
                    CMatrix::zeros(d, d)
                };
                worst = worst.max(anti.max_abs_diff(&target));
            }
        }
        worst
    }

    /// Conjugates every generator by a unitary `U`: `γ ↦ U^† γ U`.
    pub fn conjugated(&self, u: &CMatrix<T>) -> Self {
        Self {
            n: self.n,
            gammas: self.gammas.iter().map(|g| g.conjugate_by(u)).collect(),
            volume_scalar: self.volume_scalar,
        }
    }

    /// Wraps caller-supplied generators after checking the Clifford relations,
    /// anti-Hermiticity and, for `n = 7`, the `ω = −Id` orientation.
    pub fn from_gammas(gammas: Vec<CMatrix<T>>, tol: T) -> Result<Self> {
        let n = gammas.len();
        if !(2..=8).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        let d = 1usize << (n / 2);
        if gammas.iter().any(|g| g.rows() != d || g.cols() != d) {
            return Err(Error::Precondition(format!("generators must be {d}×{d}")));
        }
        let volume_scalar = (n % 2 == 1).then(|| as_scalar(&ordered_product(&gammas), tol)).flatten();
        let rep = Self { n, gammas, volume_scalar };
        if rep.relation_defect() > tol {
            return Err(Error::Precondition("generators violate the Clifford relations".into()));
        }
        if n % 2 == 1 && rep.volume_scalar.is_none() {
            return Err(Error::Precondition("volume element is not central".into()));
        }
        if n == 7 {
            let w = rep.volume_scalar.expect("checked above");
            if (w + Complex::one()).norm() > tol {
                return Err(Error::Precondition("n = 7 requires γ(E₁)⋯γ(E₇) = −Id".into()));
            }
        }
        Ok(rep)
    }
}

/// Builds the standard representation of Cl(n) for `2 ≤ n ≤ 8`.
pub fn build_clifford_rep<T: Real>(n: usize) -> Result<CliffordRep<T>> {
    if !(2..=8).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let odd = if n % 2 == 1 { n } else { n + 1 };
    let mut gammas = seed3::<T>();
    while gammas.len() < odd {
        gammas = double_odd(&gammas);
    }
    gammas.truncate(n);

    let exact = T::c(1e-12);
    let mut volume_scalar = None;
    if n % 2 == 1 {
        let w = as_scalar(&ordered_product(&gammas), exact)
            .expect("volume element of an irreducible odd representation is central");
        volume_scalar = Some(w);
        if n == 7 && (w - Complex::one()).norm() <= exact {
            let last = gammas.len() - 1;
            gammas[last] = -&gammas[last];
            volume_scalar = Some(-w);
        }
    }
    Ok(CliffordRep { n, gammas, volume_scalar })
}

/// `γ(E₁)⋯γ(E_n)`, or `ν_n = i^{(n+1)/2}·γ(E₁)⋯γ(E_n)` when `with_phase` is set
/// (odd `n` only; then `ν_n² = Id`).
pub fn volume_element<T: Real>(rep: &CliffordRep<T>, with_phase: bool) -> Result<CMatrix<T>> {
    let omega = ordered_product(&rep.gammas);
    if !with_phase {
        return Ok(omega);
    }
    if rep.n % 2 == 0 {
        return Err(Error::InvalidRequest(format!(
            "the phased volume element is defined for odd n only (got n = {})",
            rep.n
        )));
    }
    let phase = (0..(rep.n + 1) / 2).fold(Complex::<T>::one(), |acc, _| acc * imag_unit::<T>());
    Ok(omega.scale(phase))
}

/// `Σ_{i<j} coeffs[i][j]·γ(E_i)γ(E_j)` for an antisymmetric real coefficient array.
pub fn gamma_of_two_form<T: Real>(rep: &CliffordRep<T>, coeffs: &[Vec<T>]) -> Result<CMatrix<T>> {
    let n = rep.n;
    if coeffs.len() != n || coeffs.iter().any(|row| row.len() != n) {
        return Err(Error::Precondition(format!("coefficients must be {n}×{n}")));
    }
    let tol = T::c(1e-14);
    for i in 0..n {
        for j in 0..n {
            if (coeffs[i][j] + coeffs[j][i]).abs() > tol {
                return Err(Error::Precondition(format!(
                    "coefficients not antisymmetric at ({i}, {j})"
                )));
            }
        }
    }
    let d = rep.spinor_dim();
    let mut out = CMatrix::zeros(d, d);
    for i in 0..n {
        for j in (i + 1)..n {
            if coeffs[i][j].is_zero() {
                continue;
            }
            let term = (&rep.gammas[i] * &rep.gammas[j]).scale_real(coeffs[i][j]);
            out = &out + &term;
        }
    }
    Ok(out)
}
