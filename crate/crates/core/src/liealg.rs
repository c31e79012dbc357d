//! Metric Lie algebras given by structure constants in an orthonormal frame,
//! Levi-Civita connection coefficients from the Koszul formula, and the
//! seven-dimensional two-step algebra with its automorphism family.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Real};

/// `[E_i, E_j] = Σ_k c[i][j][k] E_k` with `E_1..E_n` orthonormal.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricLieAlgebra<T> {
    dim: usize,
    c: Vec<T>,
    labels: Vec<String>,
}

/// `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelTensor<T> {
    dim: usize,
    gamma: Vec<T>,
}

#[inline]
fn idx(dim: usize, i: usize, j: usize, k: usize) -> usize {
    (i * dim + j) * dim + k
}

impl<T: Field> MetricLieAlgebra<T> {
    /// Builds an algebra from a list of brackets `[E_i, E_j] += v·E_k`;
    /// antisymmetric counterparts are filled in.
    pub fn from_brackets(labels: &[&str], brackets: &[(usize, usize, usize, T)]) -> Result<Self> {
        let dim = labels.len();
        let mut c = vec![T::zero(); dim * dim * dim];
        for (i, j, k, v) in brackets {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Parameter(format!("bracket index ({i}, {j}, {k}) out of range")));
            }
            if i == j {
                return Err(Error::Parameter(format!("[E_{i}, E_{i}] must vanish")));
            }
            c[idx(dim, i, j, k)] = c[idx(dim, i, j, k)].clone() + v.clone();
            c[idx(dim, j, i, k)] = c[idx(dim, j, i, k)].clone() - v.clone();
        }
        Ok(Self { dim, c, labels: labels.iter().map(|s| s.to_string()).collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Structure constant `c[i][j][k]` (zero-based).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> T {
        self.c[idx(self.dim, i, j, k)].clone()
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = u[i].clone() * v[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let ck = &self.c[idx(n, i, j, k)];
                    if !ck.is_zero() {
                        *o = o.clone() + uv.clone() * ck.clone();
                    }
                }
            }
        }
        out
    }

    /// Largest Jacobi-identity violation over all basis triples.
    pub fn jacobi_defect(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for k in 0..n {
                        let mut s = T::zero();
                        for m in 0..n {
                            s = s + self.c[idx(n, a, b, m)].clone() * self.c[idx(n, m, cc, k)].clone()
                                + self.c[idx(n, b, cc, m)].clone() * self.c[idx(n, m, a, k)].clone()
                                + self.c[idx(n, cc, a, m)].clone() * self.c[idx(n, m, b, k)].clone();
                        }
                        let s = s.magnitude();
                        if s > worst {
                            worst = s;
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn antisymmetry_defect(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = (self.c[idx(n, i, j, k)].clone() + self.c[idx(n, j, i, k)].clone()).magnitude();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        worst
    }
}

impl<T: Field> ChristoffelTensor<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ[i][j][k]` (zero-based), i.e. `Γ^k_{ij}`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        self.gamma[idx(self.dim, i, j, k)].clone()
    }

    /// max |Γ[i][j][k] + Γ[i][k][j]|.
    pub fn metric_defect(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = (self.get(i, j, k) + self.get(i, k, j)).magnitude();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        worst
    }

    /// max |Γ[i][j][k] − Γ[j][i][k] − c[i][j][k]|.
    pub fn torsion_defect(&self, algebra: &MetricLieAlgebra<T>) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = (self.get(i, j, k) - self.get(j, i, k) - algebra.structure_constant(i, j, k))
                        .magnitude();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        worst
    }
}

/// Koszul formula in an orthonormal left-invariant frame:
/// `Γ[i][j][k] = ½(c[i][j][k] − c[j][k][i] + c[k][i][j])`.
pub fn christoffel<T: Field>(algebra: &MetricLieAlgebra<T>) -> ChristoffelTensor<T> {
    let n = algebra.dim;
    let half = T::half();
    let mut gamma = vec![T::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = algebra.structure_constant(i, j, k) - algebra.structure_constant(j, k, i)
                    + algebra.structure_constant(k, i, j);
                gamma[idx(n, i, j, k)] = half.clone() * v;
            }
        }
    }
    ChristoffelTensor { dim: n, gamma }
}

/// Heisenberg algebra in the frame `e₁ = −d·X, e₂ = −d·Y, e₃ = T⁻¹·Z`;
/// the only nonzero bracket is `[e₁, e₂] = d²T·e₃`.
pub fn heisenberg_metric_algebra<T: Field>(d: T, t: T) -> Result<MetricLieAlgebra<T>> {
    if !(d > T::zero()) || !(t > T::zero()) {
        return Err(Error::Parameter("Heisenberg metric needs d > 0 and T > 0".into()));
    }
    let c = d.clone() * d * t;
    MetricLieAlgebra::from_brackets(&["e1", "e2", "e3"], &[(0, 1, 2, c)])
}

pub const GORNET_LABELS: [&str; 7] = ["X1", "X2", "X3", "X4", "Z1", "Z2", "Zc"];

/// Seven-dimensional two-step nilpotent algebra with orthonormal basis
/// `(X₁, X₂, X₃, X₄, Z₁, Z₂, 𝒵)`:
/// `[X₁,X₂] = [X₃,X₄] = Z₁ + 𝒵`, `[X₁,X₃] = [X₄,X₂] = Z₂`,
/// `[X₂,X₃] = [X₁,Z₁] = [Z₂,X₄] = 𝒵`.
pub fn gornet_algebra<T: Field>() -> MetricLieAlgebra<T> {
    const X1: usize = 0;
    const X2: usize = 1;
    const X3: usize = 2;
    const X4: usize = 3;
    const Z1: usize = 4;
    const Z2: usize = 5;
    const ZC: usize = 6;
    let one = T::one;
    let brackets = [
        (X1, X2, Z1, one()),
        (X1, X2, ZC, one()),
        (X3, X4, Z1, one()),
        (X3, X4, ZC, one()),
        (X1, X3, Z2, one()),
        (X4, X2, Z2, one()),
        (X2, X3, ZC, one()),
        (X1, Z1, ZC, one()),
        (Z2, X4, ZC, one()),
    ];
    MetricLieAlgebra::from_brackets(&GORNET_LABELS, &brackets).expect("static bracket table is valid")
}

/// The automorphism `φ_s` of [`gornet_algebra`] as a 7×7 matrix acting on
/// coordinate columns: `φ_s(E_j) = Σ_i M[i][j] E_i`.
pub fn gornet_automorphism<T: Real>(s: T) -> Matrix<T> {
    let (sn, cs) = s.sin_cos();
    let (sn2, cs2) = (s + s).sin_cos();
    let z = T::zero();
    let o = T::one();
    Matrix::from_rows(vec![
        vec![cs, z, z, sn, z, z, z],
        vec![z, cs2, -sn2, z, z, z, z],
        vec![z, sn2, cs2, z, z, z, z],
        vec![-sn, z, z, cs, z, z, z],
        vec![z, z, z, z, cs, -sn, z],
        vec![z, z, z, z, sn, cs, z],
        vec![z, z, z, z, cs - o, -sn, o],
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismCheck<T> {
    /// max over basis pairs of ‖φ[E_i,E_j] − [φE_i, φE_j]‖_∞.
    pub defect: T,
    pub within_tolerance: bool,
}

/// Measures how far `phi` is from preserving the bracket of `algebra`.
pub fn check_automorphism<T: Field>(
    algebra: &MetricLieAlgebra<T>,
    phi: &Matrix<T>,
    tol: T,
) -> Result<AutomorphismCheck<T>> {
    let n = algebra.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::Precondition(format!("automorphism must be {n}×{n}")));
    }
    // Invertibility; the inverse itself is not needed.
    phi.inverse()?;
    let images: Vec<Vec<T>> = (0..n).map(|j| phi.column(j)).collect();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let e = |a: usize| -> Vec<T> {
                (0..n).map(|m| if m == a { T::one() } else { T::zero() }).collect()
            };
            let lhs = phi.mul_vec(&algebra.bracket(&e(i), &e(j)));
            let rhs = algebra.bracket(&images[i], &images[j]);
            for (a, b) in lhs.into_iter().zip(rhs) {
                let d = (a - b).magnitude();
                if d > worst {
                    worst = d;
                }
            }
        }
    }
    let within_tolerance = worst <= tol;
    Ok(AutomorphismCheck { defect: worst, within_tolerance })
}
