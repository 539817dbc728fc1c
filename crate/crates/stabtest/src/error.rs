//! Error type shared by every module, with the process exit codes used by
//! the command-line tools.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Two values built for different qubit counts were combined.
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// An operation that requires an isotropic subspace received one that
    /// is not.
    #[error("subspace is not isotropic")]
    NotIsotropic,

    /// An exhaustive operation was asked to run above its configured cap.
    #[error("{what} is capped at n = {cap}, got n = {requested}")]
    ResourceGuard {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// A quantity that must be real or normalized failed its tolerance
    /// check.
    #[error("{what}: {value:e} exceeds tolerance {tolerance:e}")]
    NumericalIntegrity {
        what: &'static str,
        value: f64,
        tolerance: f64,
    },

    /// Invalid parameters or configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A verified internal invariant failed; this is a bug, never a silent
    /// result.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    /// File I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// JSON encoding or decoding failure.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code reported by the CLI for this error class: 2 for
    /// configuration and input problems, 3 for resource-guard refusals,
    /// 4 for numerical-integrity failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceGuard { .. } => 3,
            Error::NumericalIntegrity { .. } | Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
