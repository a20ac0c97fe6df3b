use std::path::PathBuf;

use polariton_core::{Error as CoreError, ValidationReport};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Validation {
        message: String,
        report: Option<ValidationReport>,
    },

    #[error("cannot write {}: {message}", path.display())]
    Io { path: PathBuf, message: String },

    #[error("cannot read {}: {message}", path.display())]
    Read { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("verification failed: {0}")]
    VerifyFailed(String),
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::Validation {
            message: message.into(),
            report: None,
        }
    }

    /// 0 ok, 1 numerical or verification failure, 2 invalid input, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } | CliError::Read { .. } => 2,
            CliError::Io { .. } => 3,
            CliError::Core(e) => match e {
                CoreError::NonFinite { .. }
                | CoreError::InvalidParams(_)
                | CoreError::DegenerateIntensity
                | CoreError::NegativeTime(_)
                | CoreError::BadTimeGrid
                | CoreError::FockDims { .. }
                | CoreError::Manifold(_) => 2,
                _ => 1,
            },
            CliError::VerifyFailed(_) => 1,
        }
    }

    /// The validation report, when the failure came with one.
    pub fn report(&self) -> Option<&ValidationReport> {
        match self {
            CliError::Validation { report, .. } => report.as_ref(),
            CliError::Core(CoreError::InvalidParams(r)) => Some(r),
            _ => None,
        }
    }
}
