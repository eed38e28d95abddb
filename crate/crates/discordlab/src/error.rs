//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("dimension {dim} exceeds the configured cap of {cap} (set DISCORDLAB_MAX_DIM to raise it)")]
    DimCap { dim: usize, cap: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("matrix is not Hermitian: max |m - m^dag| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    EigNoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid density operator: {0}")]
    State(String),

    #[error("invalid probability distribution: {0}")]
    Distribution(String),

    #[error("invalid Kraus channel: {0}")]
    Channel(String),

    #[error("invalid POVM: {0}")]
    Povm(String),

    #[error("measured side dimension {dim} exceeds the optimizer cap of {cap}")]
    OptimizerCap { dim: usize, cap: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
