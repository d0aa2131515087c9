//! Closed forms for the two-mode system.
//!
//! Writing `Σ = σ0 1 + σ1 X + σ2 Y + σ3 Z` turns `Σ H = H^† Σ` into a real
//! 4x4 linear system for `(σ0, σ1, σ2, σ3)`.

use num_complex::Complex64;
use serde::Serialize;

use super::{Side, Symmetriser, SymmetriserError};
use crate::linalg::{real_nullspace, ComplexMatrix};
use crate::model::WellParameters;

/// Singular values of the Pauli coefficient matrix at or below this fraction
/// of its Frobenius norm count as zero.
pub const NULLSPACE_REL_TOL: f64 = 1e-12;

/// `γ1 γ2 = -J²` is detected as `|γ1 γ2 + J²| <= BOUNDARY_REL_TOL J²`.
pub const BOUNDARY_REL_TOL: f64 = 1e-12;

fn require_dimer(p: &WellParameters) -> Result<(), SymmetriserError> {
    if p.wells() != 2 {
        return Err(SymmetriserError::Wells { expected: 2, got: p.wells() });
    }
    Ok(())
}

/// Coefficient matrix acting on `(σ0, σ1, σ2, σ3)`:
///
/// ```text
/// [ γ1+γ2    0      0     γ1-γ2 ]
/// [   0    γ1+γ2   Δε       0   ]
/// [   0     -Δε   γ1+γ2   -2J   ]
/// [ γ1-γ2    0     2J     γ1+γ2 ]
/// ```
pub fn pauli_coefficient_matrix(p: &WellParameters) -> Result<[[f64; 4]; 4], SymmetriserError> {
    require_dimer(p)?;
    let (g, e, j) = (p.gammas(), p.epsilons(), p.coupling());
    let (s, d, de) = (g[0] + g[1], g[0] - g[1], e[0] - e[1]);
    Ok([[s, 0.0, 0.0, d], [0.0, s, de, 0.0], [0.0, -de, s, -2.0 * j], [d, 0.0, 2.0 * j, s]])
}

/// `(γ1+γ2)² [(γ1+γ2)² - (γ1-γ2)² + 4J²] + Δε² [(γ1+γ2)² - (γ1-γ2)²]`
pub fn pauli_determinant(p: &WellParameters) -> Result<f64, SymmetriserError> {
    require_dimer(p)?;
    let (g, e, j) = (p.gammas(), p.epsilons(), p.coupling());
    let (s2, d2, de) = ((g[0] + g[1]).powi(2), (g[0] - g[1]).powi(2), e[0] - e[1]);
    Ok(s2 * (s2 - d2 + 4.0 * j * j) + de * de * (s2 - d2))
}

/// `σ0 1 + σ1 X + σ2 Y + σ3 Z`
pub fn pauli_matrix(sigma: [f64; 4]) -> ComplexMatrix {
    let [s0, s1, s2, s3] = sigma;
    ComplexMatrix::from_rows(&[
        vec![Complex64::new(s0 + s3, 0.0), Complex64::new(s1, -s2)],
        vec![Complex64::new(s1, s2), Complex64::new(s0 - s3, 0.0)],
    ])
    .expect("2x2 is a valid dimension")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PauliSolution {
    pub family_dimension: usize,
    /// Orthonormal real basis of the null space.
    pub basis: Vec<[f64; 4]>,
    pub determinant_value: f64,
    /// Singular values of the coefficient matrix, descending.
    pub singular_values: Vec<f64>,
}

impl PauliSolution {
    /// The `Σ` of basis vector `k` as a left symmetriser of `h`.
    pub fn symmetriser(&self, k: usize, h: &ComplexMatrix) -> Result<Symmetriser, SymmetriserError> {
        let sigma = self.basis[k];
        Symmetriser::analyse(
            Side::Left,
            pauli_matrix(sigma),
            h,
            sigma.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }
}

/// Null space of the Pauli coefficient matrix.
///
/// The basis is canonical (reduced echelon form, then orthonormalised, first
/// nonzero component positive) so it does not depend on how the SVD rotates
/// vectors inside a two-dimensional null space.
pub fn solve_pauli_2mode(p: &WellParameters) -> Result<PauliSolution, SymmetriserError> {
    let m = pauli_coefficient_matrix(p)?;
    let rows: Vec<Vec<f64>> = m.iter().map(|r| r.to_vec()).collect();
    let (basis, svd) = real_nullspace(&rows, NULLSPACE_REL_TOL);
    let basis: Vec<[f64; 4]> = basis.into_iter().map(|v| [v[0], v[1], v[2], v[3]]).collect();
    Ok(PauliSolution {
        family_dimension: basis.len(),
        basis,
        determinant_value: pauli_determinant(p)?,
        singular_values: svd.values,
    })
}

/// Both branches `±Δε` of the on-site energy difference that makes the
/// dimer semi-symmetrisable for given `γ1, γ2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaEpsilon {
    /// Non-negative branch (`ε1 >= ε2`).
    pub plus: f64,
    pub minus: f64,
    /// Set when `γ1 γ2 = -J²`; both branches are then zero.
    pub boundary: bool,
}

impl DeltaEpsilon {
    /// `plus` for `ε1 > ε2`, `minus` otherwise.
    pub fn branch(&self, eps1_greater: bool) -> f64 {
        if eps1_greater {
            self.plus
        } else {
            self.minus
        }
    }
}

/// `Δε = ±|γ1+γ2| sqrt(-(1 + J²/(γ1 γ2)))` for `-J² <= γ1 γ2 < 0`, else `None`.
pub fn delta_epsilon_2mode(g1: f64, g2: f64, j: f64) -> Option<DeltaEpsilon> {
    let prod = g1 * g2;
    let j2 = j * j;
    if !(prod < 0.0) {
        return None;
    }
    if (prod + j2).abs() <= BOUNDARY_REL_TOL * j2 {
        return Some(DeltaEpsilon { plus: 0.0, minus: 0.0, boundary: true });
    }
    if prod < -j2 {
        return None;
    }
    let mag = (g1 + g2).abs() * (-(1.0 + j2 / prod)).sqrt();
    Some(DeltaEpsilon { plus: mag, minus: -mag, boundary: false })
}

/// `μ± = ½ [ε1+ε2 + i(γ1+γ2) ± sqrt((Δε + i(γ1-γ2))² + 4J²)]`, principal root.
pub fn eigen2_closed(p: &WellParameters) -> Result<(Complex64, Complex64), SymmetriserError> {
    require_dimer(p)?;
    let (g, e, j) = (p.gammas(), p.epsilons(), p.coupling());
    let centre = Complex64::new(e[0] + e[1], g[0] + g[1]);
    let d = Complex64::new(e[0] - e[1], g[0] - g[1]);
    let root = (d * d + 4.0 * j * j).sqrt();
    Ok(((centre + root) * 0.5, (centre - root) * 0.5))
}
