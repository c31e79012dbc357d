//! Small dense matrices.
//!
//! [`Matrix`] works over any [`Field`] (including exact rationals) and is used
//! for structure-constant manipulations. [`CMatrix`] holds complex entries over
//! a [`Real`] scalar and carries the Clifford and Dirac-operator algebra.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| {
            let a = x.magnitude();
            if a > m {
                a
            } else {
                m
            }
        })
    }

    /// Largest entrywise deviation between two equally sized matrices.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (a, b)| {
            let d = (a.clone() - b.clone()).magnitude();
            if d > m {
                d
            } else {
                m
            }
        })
    }

    fn lu(&self) -> Result<Lu<T>> {
        if !self.is_square() {
            return Err(Error::Precondition("LU factorization needs a square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign_flips = 0usize;
        let threshold = T::from_int(n as i64) * T::rounding_unit() * self.max_abs();
        for k in 0..n {
            let mut p = k;
            let mut best = a[(k, k)].magnitude();
            for i in (k + 1)..n {
                let v = a[(i, k)].magnitude();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= threshold || best.is_zero() {
                return Err(Error::Precondition("matrix is singular".into()));
            }
            if p != k {
                for j in 0..n {
                    let tmp = a[(k, j)].clone();
                    a[(k, j)] = a[(p, j)].clone();
                    a[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign_flips += 1;
            }
            let pivot = a[(k, k)].clone();
            for i in (k + 1)..n {
                let f = a[(i, k)].clone() / pivot.clone();
                a[(i, k)] = f.clone();
                for j in (k + 1)..n {
                    let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        Ok(Lu { a, perm, odd: sign_flips % 2 == 1 })
    }

    pub fn determinant(&self) -> Result<T> {
        match self.lu() {
            Ok(lu) => {
                let mut d = if lu.odd { -T::one() } else { T::one() };
                for i in 0..self.rows {
                    d = d * lu.a[(i, i)].clone();
                }
                Ok(d)
            }
            Err(Error::Precondition(msg)) if msg == "matrix is singular" => Ok(T::zero()),
            Err(e) => Err(e),
        }
    }

    /// Inverse by LU with partial pivoting; errors on (numerically) singular input.
    pub fn inverse(&self) -> Result<Self> {
        let lu = self.lu()?;
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for col in 0..n {
            let mut x: Vec<T> = (0..n)
                .map(|i| if lu.perm[i] == col { T::one() } else { T::zero() })
                .collect();
            for i in 0..n {
                for j in 0..i {
                    x[i] = x[i].clone() - lu.a[(i, j)].clone() * x[j].clone();
                }
            }
            for i in (0..n).rev() {
                for j in (i + 1)..n {
                    x[i] = x[i].clone() - lu.a[(i, j)].clone() * x[j].clone();
                }
                x[i] = x[i].clone() / lu.a[(i, i)].clone();
            }
            for i in 0..n {
                inv[(i, col)] = x[i].clone();
            }
        }
        Ok(inv)
    }
}

struct Lu<T> {
    a: Matrix<T>,
    perm: Vec<usize>,
    odd: bool,
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

pub type C<T> = Complex<T>;

/// Dense square-or-rectangular complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_real(m: &Matrix<T>) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = Complex::new(m[(i, j)], T::zero());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| *x * s).collect() }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).fold(Complex::zero(), |a, b| a + b)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max)
    }

    /// max |A - A^†| entrywise.
    pub fn hermitian_defect(&self) -> T {
        assert!(self.is_square());
        self.max_abs_diff(&self.adjoint())
    }

    /// max |A + A^†| entrywise.
    pub fn anti_hermitian_defect(&self) -> T {
        assert!(self.is_square());
        let adj = self.adjoint();
        self.data.iter().zip(&adj.data).map(|(a, b)| (*a + *b).norm()).fold(T::zero(), T::max)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).fold(Complex::zero(), |a, b| a + b))
            .collect()
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn determinant(&self) -> Result<Complex<T>> {
        if !self.is_square() {
            return Err(Error::Precondition("determinant needs a square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex::<T>::one();
        for k in 0..n {
            let mut p = k;
            let mut best = a[(k, k)].norm();
            for i in (k + 1)..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best.is_zero() {
                return Ok(Complex::zero());
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[(k, k)];
            det = det * pivot;
            for i in (k + 1)..n {
                let f = a[(i, k)] / pivot;
                if f.is_zero() {
                    continue;
                }
                for j in (k + 1)..n {
                    let v = a[(i, j)] - f * a[(k, j)];
                    a[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial det(x·I − A) as coefficients `[1, c1, …, cn]`
    /// of descending powers, via the Faddeev–LeVerrier recursion.
    pub fn characteristic_polynomial(&self) -> Result<Vec<Complex<T>>> {
        if !self.is_square() {
            return Err(Error::Precondition("characteristic polynomial needs a square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![Complex::one()];
        let mut m = CMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k)/k
            let mut next = self * &m;
            let c_prev = coeffs[k - 1];
            for i in 0..n {
                next[(i, i)] = next[(i, i)] + c_prev;
            }
            m = next;
            let am = self * &m;
            let ck = -am.trace() / Complex::new(T::from_count(k), T::zero());
            coeffs.push(ck);
        }
        Ok(coeffs)
    }

    /// Unitary similarity `U^† A U`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(&u.adjoint() * self) * u
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] = out.data[i * rhs.cols + j] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<T: Real> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -*a).collect() }
    }
}

/// Imaginary unit in the working scalar.
pub fn imag_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

pub fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}
