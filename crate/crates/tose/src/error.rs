//! Error taxonomy shared across the crate.

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's preconditions.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Scenario generation could not satisfy its structural constraints.
    #[error("scenario generation failed: {0}")]
    GenerationFailure(String),

    /// Cholesky factorization hit a non-positive or non-finite pivot.
    #[error("matrix not positive definite at pivot {pivot}")]
    NotPositiveDefinite { pivot: usize },

    /// The evenly spaced spike model is invalid for the given inputs.
    #[error("degenerate spike spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("i/o failure at {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the CLI: 1 invalid configuration,
    /// 2 numerical failure, 3 I/O failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidParameter { .. } | Error::GenerationFailure(_) => 1,
            Error::NotPositiveDefinite { .. } | Error::DegenerateSpectrum(_) => 2,
            Error::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
