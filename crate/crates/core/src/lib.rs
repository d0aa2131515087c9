//! Construction and symmetrisation analysis of few-mode tight-binding
//! Hamiltonians with localised gain and loss.
//!
//! * [`linalg`]: small dense complex linear algebra (eigenpairs with left and
//!   right vectors, characteristic polynomials, conjugate-pair classification).
//! * [`model`]: multi-well Hamiltonians and their symmetry predicates.
//! * [`symmetriser`]: left/right symmetrisation operators, closed-form two- and
//!   three-mode admissibility conditions.
//! * [`explorer`]: parameter sweeps, region maps and exceptional-point search.
//!   Runs on rayon when the `parallel` feature is enabled.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod explorer;
pub mod linalg;
pub mod model;
pub mod symmetriser;

pub use num_complex::Complex64;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error(transparent)]
    Symmetriser(#[from] symmetriser::SymmetriserError),
    #[error(transparent)]
    Explorer(#[from] explorer::ExplorerError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
