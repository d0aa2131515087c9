use std::fmt;

use symmwell::explorer::ExplorerError;
use symmwell::linalg::LinalgError;
use symmwell::model::ModelError;
use symmwell::symmetriser::SymmetriserError;

#[derive(Debug)]
pub enum CliError {
    /// Exit code 2.
    Config(String),
    /// Exit code 3.
    NotAdmissible(String),
    /// Exit code 4.
    Numerical(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Io(_) => 2,
            Self::NotAdmissible(_) => 3,
            Self::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(m) => write!(f, "invalid config: {m}"),
            Self::NotAdmissible(m) => write!(f, "not admissible: {m}"),
            Self::Numerical(m) => write!(f, "numerical failure: {m}"),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NoConvergence { .. } | LinalgError::SelfOrthogonal { .. } | LinalgError::Singular(_) => {
                Self::Numerical(e.to_string())
            }
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        Self::Config(e.to_string())
    }
}

impl From<SymmetriserError> for CliError {
    fn from(e: SymmetriserError) -> Self {
        match e {
            SymmetriserError::Linalg(inner) => inner.into(),
            SymmetriserError::NotBiorthonormal
            | SymmetriserError::ExceptionalPoint(_)
            | SymmetriserError::IllConditioned(_) => Self::Numerical(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<ExplorerError> for CliError {
    fn from(e: ExplorerError) -> Self {
        match e {
            ExplorerError::Linalg(inner) => inner.into(),
            ExplorerError::Symmetriser(inner) => inner.into(),
            ExplorerError::Model(inner) => inner.into(),
            ExplorerError::Precondition { .. } => Self::NotAdmissible(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}
