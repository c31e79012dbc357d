//! Dense symmetric and Hermitian eigensolvers: Householder reduction to
//! tridiagonal form followed by the implicit-shift QL iteration.
//!
//! Complex Hermitian `H = R + iI` is handled through the real symmetric
//! embedding `[[R, −I], [I, R]]`, whose spectrum is that of `H` with every
//! eigenvalue doubled.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Matrix};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with the matching unit eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    /// One eigenvector per eigenvalue; within a degenerate eigenspace these
    /// need not be mutually orthogonal.
    pub vectors: Vec<Vec<Complex<T>>>,
}

fn structure_tol<T: Real>(scale: T) -> T {
    T::c(1e-12).max(T::c(64.0) * T::epsilon()) * scale.max(T::one())
}

/// Householder tridiagonalization. On return `v` (row-major, n×n) holds the
/// accumulated orthogonal transform, `d` the diagonal and `e[1..]` the
/// subdiagonal.
fn tred2<T: Real>(n: usize, v: &mut [T], d: &mut [T], e: &mut [T]) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for k in 0..i {
            scale = scale + d[k].abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
                v[at(j, i)] = T::zero();
            }
        } else {
            for k in 0..i {
                d[k] = d[k] / scale;
                h = h + d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in (j + 1)..i {
                    g = g + v[at(k, j)] * d[k];
                    e[k] = e[k] + v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] = v[at(k, j)] - (f * e[k] + g * d[k]);
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }
    for i in 0..n.saturating_sub(1) {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g = g + v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] = v[at(k, j)] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = T::zero();
    }
    v[at(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

/// Implicit-shift QL on a symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e[i]` coupling `i` and `i+1` (`e[n−1]` ignored). If `v` is
/// given the rotations are accumulated into it.
fn tql2<T: Real>(n: usize, d: &mut [T], e: &mut [T], mut v: Option<&mut [T]>) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = T::zero();
    let eps = T::epsilon();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::Convergence(format!(
                        "QL iteration stalled at index {l} of {n}"
                    )));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (e[l] + e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = v.as_deref_mut() {
                        for k in 0..n {
                            let hk = v[k * n + i + 1];
                            v[k * n + i + 1] = s * v[k * n + i] + c * hk;
                            v[k * n + i] = c * v[k * n + i] - s * hk;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    Ok(())
}

fn ascending<T: Real>(values: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite eigenvalues"));
    order
}

fn check_finite<T: Real>(it: impl IntoIterator<Item = T>) -> Result<()> {
    if it.into_iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Precondition("matrix has non-finite entries".into()))
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off.len() == diag.len() − 1`), ascending.
pub fn symmetric_tridiagonal_eigenvalues<T: Real>(diag: &[T], off: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::Precondition(format!(
            "tridiagonal off-diagonal has length {}, expected {}",
            off.len(),
            n - 1
        )));
    }
    check_finite(diag.iter().chain(off).copied())?;
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(T::zero());
    tql2(n, &mut d, &mut e, None)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

/// Full eigen-decomposition of a real symmetric matrix.
pub fn symmetric_eigen<T: Real>(a: &Matrix<T>) -> Result<SymmetricEigen<T>> {
    if !a.is_square() {
        return Err(Error::Precondition("eigenproblem needs a square matrix".into()));
    }
    let n = a.rows();
    check_finite((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|ij| a[ij]))?;
    let asym = a.max_abs_diff(&a.transpose());
    if asym > structure_tol(a.max_abs()) {
        return Err(Error::Precondition(format!("matrix is not symmetric (defect {asym:e})")));
    }
    if n == 0 {
        return Ok(SymmetricEigen { values: Vec::new(), vectors: Matrix::zeros(0, 0) });
    }
    let mut v: Vec<T> = (0..n * n).map(|k| a[(k / n, k % n)]).collect();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(n, &mut v, &mut d, &mut e);
    // tred2 leaves the subdiagonal in e[1..]; shift to the coupling convention.
    for i in 1..n {
        e[i - 1] = e[i];
    }
    tql2(n, &mut d, &mut e, Some(&mut v))?;
    let order = ascending(&d);
    let values = order.iter().map(|&k| d[k]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[row * n + k];
        }
    }
    Ok(SymmetricEigen { values, vectors })
}

fn embedding<T: Real>(h: &CMatrix<T>) -> Result<Matrix<T>> {
    if !h.is_square() {
        return Err(Error::Precondition("eigenproblem needs a square matrix".into()));
    }
    let n = h.rows();
    check_finite((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).flat_map(|ij| [h[ij].re, h[ij].im]))?;
    let defect = h.hermitian_defect();
    if defect > structure_tol(h.max_abs()) {
        return Err(Error::Precondition(format!("matrix is not Hermitian (defect {defect:e})")));
    }
    let mut s = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            // Symmetrize so the embedding is exactly symmetric.
            let re = (h[(i, j)].re + h[(j, i)].re) * T::c(0.5);
            let im = (h[(i, j)].im - h[(j, i)].im) * T::c(0.5);
            s[(i, j)] = re;
            s[(n + i, n + j)] = re;
            s[(n + i, j)] = im;
            s[(i, n + j)] = -im;
        }
    }
    Ok(s)
}

/// Ascending eigenvalues of a complex Hermitian matrix.
pub fn hermitian_eigenvalues<T: Real>(h: &CMatrix<T>) -> Result<Vec<T>> {
    Ok(hermitian_eigen(h)?.values)
}

pub fn hermitian_eigen<T: Real>(h: &CMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = h.rows();
    let full = symmetric_eigen(&embedding(h)?)?;
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for p in 0..n {
        let col = 2 * p;
        values.push(full.values[col]);
        let v: Vec<Complex<T>> =
            (0..n).map(|i| Complex::new(full.vectors[(i, col)], full.vectors[(n + i, col)])).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        vectors.push(v.into_iter().map(|z| z / norm).collect());
    }
    Ok(HermitianEigen { values, vectors })
}

/// max_i ‖H v_i − λ_i v_i‖₂.
pub fn max_residual<T: Real>(h: &CMatrix<T>, eig: &HermitianEigen<T>) -> T {
    eig.values
        .iter()
        .zip(&eig.vectors)
        .map(|(&lambda, v)| {
            let hv = h.mul_vec(v);
            hv.iter().zip(v).map(|(a, b)| (*a - *b * lambda).norm_sqr()).sum::<T>().sqrt()
        })
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{imag_unit, real};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn pauli_x() {
        let h = CMatrix::from_rows(vec![vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]);
        let ev = hermitian_eigenvalues(&h).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_sorted() {
        let z = c(0., 0.);
        let h = CMatrix::from_rows(vec![
            vec![c(3., 0.), z, z],
            vec![z, c(1., 0.), z],
            vec![z, z, c(2., 0.)],
        ]);
        assert_eq!(hermitian_eigenvalues(&h).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_y_is_complex() {
        let i = imag_unit::<f64>();
        let z = real(0.0);
        let h = CMatrix::from_rows(vec![vec![z, -i], vec![i, z]]);
        let eig = hermitian_eigen(&h).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15 && (eig.values[1] - 1.0).abs() < 1e-15);
        assert!(max_residual(&h, &eig) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = CMatrix::from_rows(vec![vec![c(0., 0.), c(1., 0.)], vec![c(2., 0.), c(0., 0.)]]);
        assert!(matches!(hermitian_eigenvalues(&h), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_hermitian_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 50;
        let mut h = CMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        let eig = hermitian_eigen(&h).unwrap();
        let norm = h.max_abs() * n as f64;
        assert!(max_residual(&h, &eig) <= 1e-10 * norm);
        let tr: f64 = eig.values.iter().sum();
        assert!((tr - h.trace().re).abs() < 1e-10);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn symmetric_vectors_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 20;
        let mut a = Matrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = rng.gen_range(-1.0..1.0);
                a[(i, j)] = x;
                a[(j, i)] = x;
            }
        }
        let eig = symmetric_eigen(&a).unwrap();
        let vt = eig.vectors.transpose();
        let gram = &vt * &eig.vectors;
        assert!(gram.max_abs_diff(&Matrix::identity(n)) < 1e-12);
        for (k, &lambda) in eig.values.iter().enumerate() {
            let v = eig.vectors.column(k);
            let av = a.mul_vec(&v);
            let r = av.iter().zip(&v).map(|(x, y)| (x - lambda * y).powi(2)).sum::<f64>().sqrt();
            assert!(r < 1e-12);
        }
    }

    #[test]
    fn tridiagonal_matches_dense() {
        // 1-D Dirichlet Laplacian: eigenvalues 2 − 2cos(kπ/(n+1)).
        let n = 40;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let ev = symmetric_tridiagonal_eigenvalues(&diag, &off).unwrap();
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * (((k + 1) as f64) * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((v - exact).abs() < 1e-13);
        }
        assert!(symmetric_tridiagonal_eigenvalues(&diag, &off[1..]).is_err());
    }

    #[test]
    fn f32_path() {
        let h = CMatrix::<f32>::from_rows(vec![
            vec![Complex::new(2.0, 0.0), Complex::new(0.0, 1.0)],
            vec![Complex::new(0.0, -1.0), Complex::new(2.0, 0.0)],
        ]);
        let ev = hermitian_eigenvalues(&h).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-6 && (ev[1] - 3.0).abs() < 1e-6);
    }
}
