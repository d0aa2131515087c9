//! Dense complex linear algebra for the small matrices that appear in
//! few-mode models: characteristic polynomials, eigendecomposition with
//! paired left/right eigenvectors, bi-orthogonal normalisation and
//! conjugate-pair classification.
//!
//! Everything here works on matrices of dimension 2 to 16. Storage is
//! row-major `Vec<Complex64>`; no BLAS is involved.

mod eigen;
mod hermitian;
mod pairing;
mod poly;
mod svd;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use eigen::{biorthonormalize, eig, EigenPair, Normalization, Spectrum, SELF_ORTHOGONALITY_EP};
pub use hermitian::{hermitian_eig, HermitianEigen};
pub use pairing::{classify_pairing, PairingClassification, DEFAULT_PAIRING_TOL};
pub use poly::{char_poly, discriminant, PolyCoeffs};
pub use svd::{real_nullspace, real_svd, RealSvd};

/// Complex vector.
pub type CVector = Vec<Complex64>;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix dimension {0} outside supported range {MIN_DIM}..={MAX_DIM}")]
    Dimension(usize),
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not complex-symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0} vs {1}")]
    Mismatch(usize, usize),
    #[error("discriminant only supported for degree 2 or 3, got degree {0}")]
    UnsupportedDegree(usize),
    #[error("eigensolver did not converge after {iterations} iterations (best residual {best_residual:.3e})")]
    NoConvergence { iterations: usize, best_residual: f64 },
    #[error("eigenvalue {value} is self-orthogonal (|l^dagger r| = {self_orthogonality:.3e}); bi-orthogonal normalisation undefined")]
    SelfOrthogonal { value: Complex64, self_orthogonality: f64 },
    #[error("matrix is singular or ill-conditioned (condition estimate {0:.3e})")]
    Singular(f64),
}

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
    symmetric: bool,
}

/// Serialised as a list of rows.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl ComplexMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(LinalgError::Dimension(n));
        }
        if data.len() != n * n {
            return Err(LinalgError::EntryCount { expected: n * n, got: data.len() });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite { row: k / n, col: k % n });
        }
        Ok(Self { n, data, symmetric: false })
    }

    /// Builds a matrix and flags it complex-symmetric. Fails unless
    /// `M[i][j] == M[j][i]` holds bit-for-bit.
    pub fn new_complex_symmetric(n: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        let mut m = Self::new(n, data)?;
        if !m.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        m.symmetric = true;
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(LinalgError::EntryCount { expected: n, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Self::new(n, data)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(n: usize) -> Self {
        assert!((MIN_DIM..=MAX_DIM).contains(&n), "dimension {n} out of range");
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n], symmetric: false }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// `u v^dagger`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let n = u.len();
        assert_eq!(n, v.len());
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = u[i] * v[j].conj();
            }
        }
        m
    }

    /// `u v^T` (no conjugation).
    pub fn outer_transpose(u: &[Complex64], v: &[Complex64]) -> Self {
        let n = u.len();
        assert_eq!(n, v.len());
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = u[i] * v[j];
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// True when the matrix was constructed as complex-symmetric.
    pub fn is_flagged_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Exact entrywise check of `M == M^T`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)];
            }
        }
        m.symmetric = self.symmetric;
        m
    }

    pub fn conj(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z.conj()).collect(), symmetric: self.symmetric }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&z| z * s).collect(), symmetric: self.symmetric }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> CVector {
        assert_eq!(v.len(), self.n);
        self.data.chunks(self.n).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `v^dagger M` returned as a column vector of the row's entries.
    pub fn vec_adj_mul(&self, v: &[Complex64]) -> CVector {
        let n = self.n;
        assert_eq!(v.len(), n);
        (0..n).map(|j| (0..n).map(|i| v[i].conj() * self[(i, j)]).sum()).collect()
    }

    /// `(M + M^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        let mut m = self + &adj;
        m.data.iter_mut().for_each(|z| *z *= 0.5);
        m
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Determinant by partial-pivot LU.
    pub fn det(&self) -> Complex64 {
        match lu(self) {
            Some((lu, _, sign)) => {
                let mut d = Complex64::new(sign, 0.0);
                for i in 0..self.n {
                    d *= lu[(i, i)];
                }
                d
            }
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Inverse by partial-pivot LU. Fails when a pivot vanishes.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let n = self.n;
        let (lu, perm, _) = lu(self).ok_or(LinalgError::Singular(f64::INFINITY))?;
        let mut inv = Self::zeros(n);
        for col in 0..n {
            let mut x: CVector = (0..n)
                .map(|i| if perm[i] == col { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
                .collect();
            for i in 0..n {
                let s: Complex64 = (0..i).map(|j| lu[(i, j)] * x[j]).sum();
                x[i] -= s;
            }
            for i in (0..n).rev() {
                let s: Complex64 = (i + 1..n).map(|j| lu[(i, j)] * x[j]).sum();
                x[i] = (x[i] - s) / lu[(i, i)];
            }
            for i in 0..n {
                inv[(i, col)] = x[i];
            }
        }
        Ok(inv)
    }

    /// Frobenius-norm condition estimate `||M||_F ||M^-1||_F`.
    pub fn condition_estimate(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.frobenius() * inv.frobenius(),
            Err(_) => f64::INFINITY,
        }
    }
}

/// LU with partial pivoting. Returns the packed factors, the row
/// permutation (`perm[i]` is the original row now at position `i`) and
/// the permutation sign.
fn lu(m: &ComplexMatrix) -> Option<(ComplexMatrix, Vec<usize>, f64)> {
    let n = m.n;
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let scale = m.max_abs();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))?;
        if a[(p, k)].norm() <= f64::EPSILON * scale * n as f64 || a[(p, k)].norm() == 0.0 {
            return None;
        }
        if p != k {
            for j in 0..n {
                a.data.swap(p * n + j, k * n + j);
            }
            perm.swap(p, k);
            sign = -sign;
        }
        let pivot = a[(k, k)];
        for i in k + 1..n {
            let f = a[(i, k)] / pivot;
            a[(i, k)] = f;
            for j in k + 1..n {
                let t = a[(k, j)];
                a[(i, j)] -= f * t;
            }
        }
    }
    Some((a, perm, sign))
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        self.symmetric = false;
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let n = self.n;
        assert_eq!(n, rhs.n, "dimension mismatch");
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
            symmetric: false,
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
            symmetric: false,
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.n, self.n)?;
        for row in self.data.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian inner product `u^dagger v`.
pub fn dot_adj(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Bilinear product `u^T v`.
pub fn dot_bilinear(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
