//! Gain/loss profiles that make the three-mode characteristic polynomial real.

use serde::Serialize;

use crate::linalg::{char_poly, ComplexMatrix};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ThreeModeSolution {
    None,
    /// `γ = γ0 (-(ε2-ε3), ε1-ε3, -(ε1-ε2))` for `γ0 = +|γ0|` then `-|γ0|`.
    Triples {
        gamma0: [f64; 2],
        triples: [[f64; 3]; 2],
    },
    /// `ε1 = ε3`: `γ1 = -γ3` free, `γ2 = 0`.
    PtFamily,
    /// All `ε` equal: `γ = 0` as well as the PT family.
    HermitianAndPt,
}

impl ThreeModeSolution {
    pub fn is_none(&self) -> bool {
        matches!(self, Self::None)
    }

    /// Triple for `γ0 > 0`, if any.
    pub fn positive_triple(&self) -> Option<[f64; 3]> {
        match self {
            Self::Triples { triples, .. } => Some(triples[0]),
            _ => None,
        }
    }
}

/// `γ0² = (J² - Δ12 Δ23) / (Δ12 Δ23)`.
///
/// Equivalent to the symmetric-looking
/// `(Δ12³ + Δ23³ - Δ13³ + 3J² Δ13) / (3 Δ12 Δ23 Δ13)` since
/// `Δ12³ + Δ23³ - Δ13³ = -3 Δ12 Δ23 Δ13`, but free of the cancellation.
pub fn gamma0_squared(eps: [f64; 3], j: f64) -> f64 {
    let ab = (eps[0] - eps[1]) * (eps[1] - eps[2]);
    (j * j - ab) / ab
}

/// Cases, checked in order, with equality meaning within
/// `1e-12 (1 + max|ε|)`:
/// all `ε` equal, `ε1 = ε3`, `0 < Δ12 Δ23 <= J²` with `ε` pairwise distinct,
/// otherwise no solution.
pub fn solve_3mode_gammas(eps: [f64; 3], j: f64) -> ThreeModeSolution {
    assert!(j > 0.0, "coupling must be positive");
    let tol = 1e-12 * (1.0 + eps.iter().map(|e| e.abs()).fold(0.0, f64::max));
    let (a, b) = (eps[0] - eps[1], eps[1] - eps[2]);
    let d13 = eps[0] - eps[2];
    if a.abs() <= tol && b.abs() <= tol {
        return ThreeModeSolution::HermitianAndPt;
    }
    if d13.abs() <= tol {
        return ThreeModeSolution::PtFamily;
    }
    if a.abs() <= tol || b.abs() <= tol {
        return ThreeModeSolution::None;
    }
    let ab = a * b;
    if !(ab > 0.0 && ab <= j * j) {
        return ThreeModeSolution::None;
    }
    let g0 = gamma0_squared(eps, j).max(0.0).sqrt();
    let triple = |g: f64| [-b * g, d13 * g, -a * g];
    ThreeModeSolution::Triples { gamma0: [g0, -g0], triples: [triple(g0), triple(-g0)] }
}

/// Largest absolute violation of the reality conditions on the `λ²`, `λ`
/// and `λ⁰` coefficients:
///
/// ```text
/// γ1 + γ2 + γ3 = 0
/// ε1γ2 + γ1ε2 + ε2γ3 + γ2ε3 + ε1γ3 + γ1ε3 = 0
/// γ1ε2ε3 + ε1γ2ε3 + ε1ε2γ3 - γ1γ2γ3 - J²(γ1 + γ3) = 0
/// ```
///
/// The last line is `Im det H = 0`; the cubic gain term enters with a minus
/// sign from `i³ = -i`.
pub fn three_mode_coefficient_residual(eps: [f64; 3], gammas: [f64; 3], j: f64) -> f64 {
    let [e1, e2, e3] = eps;
    let [g1, g2, g3] = gammas;
    let r2 = g1 + g2 + g3;
    let r1 = e1 * g2 + g1 * e2 + e2 * g3 + g2 * e3 + e1 * g3 + g1 * e3;
    let r0 = g1 * e2 * e3 + e1 * g2 * e3 + e1 * e2 * g3 - g1 * g2 * g3 - j * j * (g1 + g3);
    r2.abs().max(r1.abs()).max(r0.abs())
}

/// `max_k |Im c_k| / (1 + max_k |c_k|)` over the characteristic polynomial.
pub fn charpoly_reality_residual(h: &ComplexMatrix) -> f64 {
    let p = char_poly(h);
    p.max_imag() / (1.0 + p.max_abs())
}
