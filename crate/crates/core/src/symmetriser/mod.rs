//! Left and right symmetrisation operators.
//!
//! A Hermitian `Σ_L` symmetrises `H` from the left when `Σ_L H = H^† Σ_L`,
//! and `Σ_R` from the right when `H Σ_R = Σ_R H^†`. Either forces the
//! spectrum on the non-kernel subspace of `Σ` to be real or to come in
//! complex-conjugate pairs. A singular `Σ` (semi-symmetrisation) leaves the
//! eigenvalues of its kernel states unconstrained.

mod three_mode;
mod two_mode;

pub use three_mode::{
    charpoly_reality_residual, gamma0_squared, solve_3mode_gammas, three_mode_coefficient_residual, ThreeModeSolution,
};
pub use two_mode::{
    delta_epsilon_2mode, eigen2_closed, pauli_coefficient_matrix, pauli_determinant, pauli_matrix, solve_pauli_2mode,
    DeltaEpsilon, PauliSolution, BOUNDARY_REL_TOL, NULLSPACE_REL_TOL,
};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{eig, hermitian_eig, CVector, ComplexMatrix, LinalgError, Normalization, Spectrum};

/// Relative size below which an eigenvalue of `Σ` counts as zero.
pub const KERNEL_REL_TOL: f64 = 1e-9;

/// Largest condition estimate accepted for `M_L` in
/// [`induced_antilinear_symmetry`].
pub const MAX_CONDITION: f64 = 1e8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetriserError {
    #[error("spectrum must be bi-orthonormalised first")]
    NotBiorthonormal,
    #[error("spectrum has an exceptional point near {0}; no construction is defined there")]
    ExceptionalPoint(Complex64),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("expected {expected} weights for {kind} terms, got {got}")]
    Weights { kind: &'static str, expected: usize, got: usize },
    #[error("operation needs exactly {expected} wells, got {got}")]
    Wells { expected: usize, got: usize },
    #[error("M_L is singular or ill-conditioned (condition estimate {0:e})")]
    IllConditioned(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Coefficients of the spectral construction. `None` means all ones.
///
/// `real[k]` weights the `k`-th real eigenvalue in classification order;
/// `pairs[m]` is `p⁺` of the `m`-th conjugate pair, and `p⁻ = conj(p⁺)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpectralWeights {
    pub real: Option<Vec<f64>>,
    pub pairs: Option<Vec<Complex64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Symmetriser {
    pub side: Side,
    pub matrix: ComplexMatrix,
    pub rank: usize,
    pub kernel_basis: Vec<CVector>,
    pub residual: f64,
    pub coefficients: Vec<Complex64>,
}

impl Symmetriser {
    /// Wraps an explicit `Σ`, measuring rank, kernel and residual against `h`.
    pub fn analyse(
        side: Side,
        matrix: ComplexMatrix,
        h: &ComplexMatrix,
        coefficients: Vec<Complex64>,
    ) -> Result<Self, SymmetriserError> {
        let residual = symmetrisation_residual(&matrix, h, side)?;
        let he = hermitian_eig(&matrix);
        let cut = KERNEL_REL_TOL * matrix.frobenius();
        let kernel_basis: Vec<CVector> =
            he.values.iter().zip(he.vectors).filter(|(v, _)| v.abs() <= cut).map(|(_, v)| v).collect();
        Ok(Self { side, rank: matrix.dim() - kernel_basis.len(), matrix, kernel_basis, residual, coefficients })
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.matrix - &self.matrix.adjoint()).frobenius()
    }
}

fn check_spectrum(s: &Spectrum) -> Result<(), SymmetriserError> {
    if s.normalization != Normalization::Biorthogonal {
        return Err(SymmetriserError::NotBiorthonormal);
    }
    if s.degenerate {
        let worst = s.pairs.iter().min_by(|a, b| a.self_orthogonality.total_cmp(&b.self_orthogonality));
        return Err(SymmetriserError::ExceptionalPoint(worst.map_or(Complex64::new(0.0, 0.0), |p| p.value)));
    }
    Ok(())
}

fn check_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(), SymmetriserError> {
    if a.dim() != b.dim() {
        return Err(SymmetriserError::Dimension(a.dim(), b.dim()));
    }
    Ok(())
}

/// Spectral construction
///
/// ```text
/// Σ_L = Σ_n p_n l_n l_n^†  +  Σ_m [ p_m⁺ l_m⁻ l_m⁺^† + p_m⁻ l_m⁺ l_m⁻^† ]
/// ```
///
/// over real eigenvalues and conjugate pairs (`±` is the sign of `Im λ`).
/// `Σ_R` is the same expression in right eigenvectors. Isolated eigenvalues
/// are left out, so their right (left side) or left (right side) eigenvectors
/// end up in the kernel.
pub fn build_spectral_symmetriser(
    s: &Spectrum,
    h: &ComplexMatrix,
    side: Side,
    weights: &SpectralWeights,
) -> Result<Symmetriser, SymmetriserError> {
    check_spectrum(s)?;
    if s.len() != h.dim() {
        return Err(SymmetriserError::Dimension(s.len(), h.dim()));
    }
    let cls = &s.classification;
    let real_w = weights.real.clone().unwrap_or_else(|| vec![1.0; cls.real_indices.len()]);
    if real_w.len() != cls.real_indices.len() {
        return Err(SymmetriserError::Weights { kind: "real", expected: cls.real_indices.len(), got: real_w.len() });
    }
    let pair_w = weights.pairs.clone().unwrap_or_else(|| vec![Complex64::new(1.0, 0.0); cls.conjugate_pairs.len()]);
    if pair_w.len() != cls.conjugate_pairs.len() {
        return Err(SymmetriserError::Weights { kind: "pair", expected: cls.conjugate_pairs.len(), got: pair_w.len() });
    }

    let vec_of = |i: usize| match side {
        Side::Left => &s.pairs[i].left,
        Side::Right => &s.pairs[i].right,
    };
    let n = h.dim();
    let mut sigma = ComplexMatrix::zeros(n);
    let mut coefficients = Vec::new();
    for (&i, &p) in cls.real_indices.iter().zip(&real_w) {
        let v = vec_of(i);
        sigma = &sigma + &ComplexMatrix::outer(v, v).scale(Complex64::new(p, 0.0));
        coefficients.push(Complex64::new(p, 0.0));
    }
    for (&(i, j), &pp) in cls.conjugate_pairs.iter().zip(&pair_w) {
        let (plus, minus) = if s.pairs[i].value.im > 0.0 { (i, j) } else { (j, i) };
        let (vp, vm) = (vec_of(plus), vec_of(minus));
        sigma = &sigma + &ComplexMatrix::outer(vm, vp).scale(pp);
        sigma = &sigma + &ComplexMatrix::outer(vp, vm).scale(pp.conj());
        coefficients.push(pp);
        coefficients.push(pp.conj());
    }
    // remove rounding-level anti-Hermitian part
    Symmetriser::analyse(side, sigma.hermitian_part(), h, coefficients)
}

/// `|Σ H - H^† Σ|_F / (|Σ|_F |H|_F)` (left) or
/// `|H Σ - Σ H^†|_F / (|Σ|_F |H|_F)` (right). Zero for `Σ = 0` or `H = 0`.
pub fn symmetrisation_residual(sigma: &ComplexMatrix, h: &ComplexMatrix, side: Side) -> Result<f64, SymmetriserError> {
    check_dims(sigma, h)?;
    let ha = h.adjoint();
    let diff = match side {
        Side::Left => &(sigma * h) - &(&ha * sigma),
        Side::Right => &(h * sigma) - &(sigma * &ha),
    };
    Ok(ratio(diff.frobenius(), sigma.frobenius() * h.frobenius()))
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// `|Σ_L Σ_R' Σ_L - Σ_L|_F / |Σ_L|_F`, where `Σ_R' = Σ_R / m` and `m` is the
/// mean of the non-zero eigenvalues of `Σ_R Σ_L`.
pub fn semi_inverse_residual(sigma_l: &ComplexMatrix, sigma_r: &ComplexMatrix) -> Result<f64, SymmetriserError> {
    check_dims(sigma_l, sigma_r)?;
    let values = eig(&(sigma_r * sigma_l))?.values();
    let top = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let live: Vec<Complex64> = values.into_iter().filter(|z| z.norm() > 1e-8 * top).collect();
    let sr = if live.is_empty() {
        sigma_r.clone()
    } else {
        let mean = live.iter().sum::<Complex64>() / live.len() as f64;
        sigma_r.scale(mean.inv())
    };
    let diff = &(&(sigma_l * &sr) * sigma_l) - sigma_l;
    Ok(ratio(diff.frobenius(), sigma_l.frobenius()))
}

/// `|[Σ_R Σ_L, H]|_F / (|Σ_R Σ_L|_F |H|_F)`.
pub fn quasi_commutator_residual(
    sigma_l: &ComplexMatrix,
    sigma_r: &ComplexMatrix,
    h: &ComplexMatrix,
) -> Result<f64, SymmetriserError> {
    check_dims(sigma_l, sigma_r)?;
    check_dims(sigma_l, h)?;
    let prod = sigma_r * sigma_l;
    Ok(ratio(prod.commutator(h).frobenius(), prod.frobenius() * h.frobenius()))
}

/// Matrix part `M` of the antilinear `T: v -> M conj(v)`:
/// `M_L = Σ l lᵀ`, `M_R = Σ r rᵀ` over all eigenpairs.
///
/// The conjugation acts between the bra and the ket, so for complex-symmetric
/// `H` with `l = conj(r)` the left operator is plain conjugation (`M_L = I`).
pub fn build_antilinear_t(s: &Spectrum, side: Side) -> Result<ComplexMatrix, SymmetriserError> {
    check_spectrum(s)?;
    let n = s.len();
    let mut m = ComplexMatrix::zeros(n);
    for p in &s.pairs {
        let v = match side {
            Side::Left => &p.left,
            Side::Right => &p.right,
        };
        m = &m + &ComplexMatrix::outer_transpose(v, v);
    }
    Ok(m)
}

/// Relative defect of the antilinear intertwining relation:
/// `M_L conj(H) = H^† M_L` (left) or `H M_R = M_R Hᵀ` (right).
pub fn antilinear_t_residual(m: &ComplexMatrix, h: &ComplexMatrix, side: Side) -> Result<f64, SymmetriserError> {
    check_dims(m, h)?;
    let diff = match side {
        Side::Left => &(m * &h.conj()) - &(&h.adjoint() * m),
        Side::Right => &(h * m) - &(m * &h.transpose()),
    };
    Ok(ratio(diff.frobenius(), m.frobenius() * h.frobenius()))
}

/// Antilinear symmetry `A` from `Σ_L = T_L A`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntilinearSymmetry {
    /// `N` in `A v = N conj(v)`.
    pub matrix: ComplexMatrix,
    /// `|N conj(H) - H N|_F / (|H|_F |N|_F)`.
    pub residual: f64,
    pub condition: f64,
}

/// `N = conj(M_L⁻¹ Σ_L)`. The residual is reported, not enforced: a
/// semi-symmetrising `Σ_L` still yields an `N`.
pub fn induced_antilinear_symmetry(
    sigma_l: &ComplexMatrix,
    m_l: &ComplexMatrix,
    h: &ComplexMatrix,
) -> Result<AntilinearSymmetry, SymmetriserError> {
    check_dims(sigma_l, m_l)?;
    check_dims(sigma_l, h)?;
    let condition = m_l.condition_estimate();
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(SymmetriserError::IllConditioned(condition));
    }
    let nmat = (&m_l.inverse()? * sigma_l).conj();
    let diff = &(&nmat * &h.conj()) - &(h * &nmat);
    let residual = ratio(diff.frobenius(), h.frobenius() * nmat.frobenius());
    Ok(AntilinearSymmetry { matrix: nmat, residual, condition })
}
