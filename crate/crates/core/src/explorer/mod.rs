//! Parameter sweeps, region maps and exceptional-point location.
//!
//! Every sample is independent. [`Execution::Parallel`] evaluates them on the
//! rayon pool (feature `parallel`), [`Execution::Sequential`] in a plain loop;
//! both return results in the same deterministic order.

mod ep;
mod three_mode;
mod two_mode;

pub use ep::{
    antipt3_path, find_ep, hermitian2_path, pt2_path, slice3_path, EPResult, EpOptions, DEFAULT_EP_GRID,
    TRIPLE_ROOT_REL_TOL,
};
pub use three_mode::{classify_3mode, map_3mode_region, sweep_3mode_antipt, AntiPtRow, PlaneSpec};
pub use two_mode::{classify_2mode, map_2mode_region, sweep_2mode, Branch, Parametrisation, SweepRow, GRID_REL_TOL};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::model::ModelError;
use crate::symmetriser::SymmetriserError;

/// Absolute tolerance on `Im λ` for calling a sampled eigenvalue real.
pub const REAL_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExplorerError {
    #[error("invalid range [{lo}, {hi}]")]
    Range { lo: f64, hi: f64 },
    #[error("need at least 2 steps, got {0}")]
    Steps(usize),
    #[error("Lunt-trap parameter must satisfy |a| < 1, got {0}")]
    LuntParameter(f64),
    #[error("invalid plane: {0}")]
    Plane(String),
    #[error("characteristic polynomial is not real at t = {param} (residual {residual:e})")]
    Precondition { param: f64, residual: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Symmetriser(#[from] SymmetriserError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential evaluation without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Self::Parallel
        } else {
            Self::Sequential
        }
    }
}

impl Execution {
    /// `(0..n).map(f)` in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Self::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }
}

/// Sizes the global rayon pool. Only effective before the pool is first used.
pub fn configure_threads(threads: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum RegionClass {
    NotAdmissible,
    PtLine,
    SemiOneReal,
    FullThreeReal,
    FullOneReal,
    Hermitian,
    Boundary,
}

impl RegionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NotAdmissible => "notAdmissible",
            Self::PtLine => "ptLine",
            Self::SemiOneReal => "semiOneReal",
            Self::FullThreeReal => "fullThreeReal",
            Self::FullOneReal => "fullOneReal",
            Self::Hermitian => "hermitian",
            Self::Boundary => "boundary",
        }
    }

    pub fn is_admissible(self) -> bool {
        self != Self::NotAdmissible
    }
}

impl std::fmt::Display for RegionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One classified grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionSample {
    /// Grid indices along the first and second swept axis.
    pub index: (usize, usize),
    pub inputs: (f64, f64),
    pub class: RegionClass,
    /// Empty when not admissible.
    pub eigenvalues: Vec<Complex64>,
    pub gammas: Vec<f64>,
    pub epsilons: Vec<f64>,
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive, computed from the
/// index so that no error accumulates.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, ExplorerError> {
    check_range(lo, hi)?;
    if steps < 2 {
        return Err(ExplorerError::Steps(steps));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|k| if k + 1 == steps { hi } else { lo + (hi - lo) * (k as f64 / last) }).collect())
}

fn check_range(lo: f64, hi: f64) -> Result<(), ExplorerError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(ExplorerError::Range { lo, hi });
    }
    Ok(())
}

pub(crate) fn count_real(values: &[Complex64]) -> usize {
    values.iter().filter(|z| z.im.abs() <= REAL_TOL).count()
}
