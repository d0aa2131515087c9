//! Multi-well tight-binding Hamiltonians with complex on-site potentials.
//!
//! Well `k` carries an on-site energy `ε_k` and a gain (`γ_k > 0`) or loss
//! (`γ_k < 0`) rate; neighbouring wells are coupled by a uniform real
//! transition rate `J`:
//!
//! ```text
//! H_kk = ε_k + i γ_k,   H_{k,k±1} = -J
//! ```
//!
//! Site reversal maps well `k` to well `N + 1 - k` (1-based).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{CVector, ComplexMatrix, MAX_DIM, MIN_DIM};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("number of wells must be in {MIN_DIM}..={MAX_DIM}, got {0}")]
    Wells(usize),
    #[error("{field} has length {got}, expected {expected}")]
    Length { field: &'static str, got: usize, expected: usize },
    #[error("{field}[{index}] is not finite")]
    NonFinite { field: &'static str, index: usize },
    #[error("coupling J must be finite and > 0, got {0}")]
    Coupling(f64),
    #[error("energy shift must be finite, got {0}")]
    Shift(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WellParameters {
    epsilons: Vec<f64>,
    gammas: Vec<f64>,
    coupling: f64,
}

impl WellParameters {
    pub fn new(epsilons: Vec<f64>, gammas: Vec<f64>, coupling: f64) -> Result<Self, ModelError> {
        let n = epsilons.len();
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(ModelError::Wells(n));
        }
        if gammas.len() != n {
            return Err(ModelError::Length { field: "gammas", got: gammas.len(), expected: n });
        }
        for (field, values) in [("epsilons", &epsilons), ("gammas", &gammas)] {
            if let Some(index) = values.iter().position(|x| !x.is_finite()) {
                return Err(ModelError::NonFinite { field, index });
            }
        }
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(ModelError::Coupling(coupling));
        }
        Ok(Self { epsilons, gammas, coupling })
    }

    /// Two wells, `(ε1, ε2)`, `(γ1, γ2)`.
    pub fn dimer(eps: [f64; 2], gammas: [f64; 2], coupling: f64) -> Result<Self, ModelError> {
        Self::new(eps.to_vec(), gammas.to_vec(), coupling)
    }

    pub fn trimer(eps: [f64; 3], gammas: [f64; 3], coupling: f64) -> Result<Self, ModelError> {
        Self::new(eps.to_vec(), gammas.to_vec(), coupling)
    }

    pub fn wells(&self) -> usize {
        self.epsilons.len()
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn max_abs_gamma(&self) -> f64 {
        self.gammas.iter().map(|g| g.abs()).fold(0.0, f64::max)
    }
}

/// Tridiagonal complex-symmetric Hamiltonian, flagged as such.
pub fn build_hamiltonian(p: &WellParameters) -> ComplexMatrix {
    let n = p.wells();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        data[k * n + k] = Complex64::new(p.epsilons[k], p.gammas[k]);
        if k + 1 < n {
            data[k * n + k + 1] = Complex64::new(-p.coupling, 0.0);
            data[(k + 1) * n + k] = Complex64::new(-p.coupling, 0.0);
        }
    }
    ComplexMatrix::new_complex_symmetric(n, data).expect("validated parameters build a valid matrix")
}

/// Shifts every on-site energy by `c`.
pub fn shift_energy(p: &WellParameters, c: f64) -> Result<WellParameters, ModelError> {
    if !c.is_finite() {
        return Err(ModelError::Shift(c));
    }
    WellParameters::new(p.epsilons.iter().map(|e| e + c).collect(), p.gammas.clone(), p.coupling)
}

/// Symmetric real potential, antisymmetric imaginary potential.
pub fn is_pt_symmetric(p: &WellParameters, tol: f64) -> bool {
    let n = p.wells();
    (0..n).all(|k| {
        (p.epsilons[k] - p.epsilons[n - 1 - k]).abs() <= tol && (p.gammas[k] + p.gammas[n - 1 - k]).abs() <= tol
    })
}

/// Antisymmetric real potential, symmetric imaginary potential.
///
/// This is a statement about the on-site potential only. The full
/// anticommutator with PT does not vanish because the real hopping `-J`
/// is unchanged by PT; see [`pt_anticommutator_norm`].
pub fn is_anti_pt_potential(p: &WellParameters, tol: f64) -> bool {
    let n = p.wells();
    (0..n).all(|k| {
        (p.epsilons[k] + p.epsilons[n - 1 - k]).abs() <= tol && (p.gammas[k] - p.gammas[n - 1 - k]).abs() <= tol
    })
}

fn exchange(n: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(n);
    for k in 0..n {
        p[(k, n - 1 - k)] = Complex64::new(1.0, 0.0);
    }
    p
}

/// `|| P conj(H) - H P ||_F`: matrix part of the commutator of `H` with the
/// antilinear `PT: v -> P conj(v)`.
pub fn pt_commutator_norm(h: &ComplexMatrix) -> f64 {
    let p = exchange(h.dim());
    (&(&p * &h.conj()) - &(h * &p)).frobenius()
}

/// `|| P conj(H) + H P ||_F`: matrix part of the anticommutator `{PT, H}`.
pub fn pt_anticommutator_norm(h: &ComplexMatrix) -> f64 {
    let p = exchange(h.dim());
    (&(&p * &h.conj()) + &(h * &p)).frobenius()
}

/// Wave function over the wells; occupations are `|ψ_k|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(amplitudes: CVector) -> Self {
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn occupations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.occupations().iter().sum()
    }
}

/// Net gain of a state, `Σ_k |ψ_k|^2 γ_k`. Zero means gain and loss are
/// balanced for this particular state.
pub fn state_balance(s: &StateVector, p: &WellParameters) -> Result<f64, ModelError> {
    if s.amplitudes.len() != p.wells() {
        return Err(ModelError::Length { field: "amplitudes", got: s.amplitudes.len(), expected: p.wells() });
    }
    Ok(s.occupations().iter().zip(&p.gammas).map(|(n, g)| n * g).sum())
}
