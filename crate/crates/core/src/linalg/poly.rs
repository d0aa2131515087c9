use num_complex::Complex64;
use serde::Serialize;

use super::{ComplexMatrix, LinalgError};

/// Monic polynomial `λ^N + c_{N-1} λ^{N-1} + ... + c_0`, stored as
/// `coeffs[k] = c_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyCoeffs {
    coeffs: Vec<Complex64>,
}

impl PolyCoeffs {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    /// Expands `prod (λ - root_i)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        // p holds coefficients low -> high including the leading 1.
        let mut p = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
            for (k, &a) in p.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= r * a;
            }
            p = next;
        }
        p.pop();
        Self { coeffs: p }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(1.0, 0.0), |acc, &c| acc * x + c)
    }

    /// Largest coefficient mismatch, for reconstruction checks.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.degree(), other.degree());
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Characteristic polynomial `det(λI - M)` by the Faddeev–LeVerrier
/// recursion:
///
/// ```text
/// M_1 = I,            c_{N-1} = -tr(M)
/// M_k = M M_{k-1} + c_{N-k+1} I,   c_{N-k} = -tr(M M_k) / k
/// ```
///
/// Each step is one matrix product, so the cost is O(N^4); fine for N <= 16.
pub fn char_poly(m: &ComplexMatrix) -> PolyCoeffs {
    let n = m.dim();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    let mut mk = ComplexMatrix::identity(n);
    for k in 1..=n {
        let am = m * &mk;
        let ck = -am.trace() / k as f64;
        coeffs[n - k] = ck;
        if k < n {
            mk = am;
            for i in 0..n {
                mk[(i, i)] += ck;
            }
        }
    }
    PolyCoeffs { coeffs }
}

/// Discriminant of a monic quadratic or cubic. Vanishes exactly when the
/// polynomial has a repeated root.
pub fn discriminant(p: &PolyCoeffs) -> Result<Complex64, LinalgError> {
    match p.degree() {
        2 => {
            let (c0, c1) = (p.coeff(0), p.coeff(1));
            Ok(c1 * c1 - 4.0 * c0)
        }
        3 => {
            let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
            Ok(18.0 * a * b * c - 4.0 * a * a * a * c + a * a * b * b - 4.0 * b * b * b - 27.0 * c * c)
        }
        d => Err(LinalgError::UnsupportedDegree(d)),
    }
}
