use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Error)]
pub enum JcError {
    /// The truncated Fock space is too small to hold the requested state.
    #[error("truncation insufficient: |alpha|={alpha_abs} in dim={dim} leaves norm deficit {deficit:e} (tol {tol:e})")]
    TruncationInsufficient {
        alpha_abs: f64,
        dim: usize,
        deficit: f64,
        tol: f64,
    },

    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:e}")]
    NonHermitian { deviation: f64 },

    /// The Chebyshev form divides by the square root of the determinant.
    #[error("atomic determinant {det:e} is at or below the degeneracy tolerance")]
    DegenerateDeterminant { det: f64 },

    /// The atomic state is (numerically) pure, so the entropy operator diverges.
    #[error("atomic state is degenerate: epsilon = {epsilon} is within tolerance of 1/2")]
    DegenerateState { epsilon: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl JcError {
    /// Short machine-parsable category used by the CLI's error line.
    pub fn category(&self) -> &'static str {
        match self {
            JcError::TruncationInsufficient { .. } => "truncation-insufficient",
            JcError::NonHermitian { .. } => "non-hermitian",
            JcError::DegenerateDeterminant { .. } => "degenerate-determinant",
            JcError::DegenerateState { .. } => "degenerate-state",
            JcError::DimensionMismatch { .. } => "dimension-mismatch",
            JcError::InvalidConfig(_) => "invalid-config",
            JcError::Io { .. } => "io",
            JcError::Serialize(_) => "serialize",
        }
    }
}

pub type Result<T> = std::result::Result<T, JcError>;
