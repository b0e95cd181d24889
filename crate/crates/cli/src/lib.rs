//! Command implementations behind the `pqc` binary.
//!
//! Exit codes: 0 success, 1 the checked property fails, 2 usage, parse or
//! precondition errors.

pub mod commands;
pub mod document;
pub mod format;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot read document: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("internal guarantee violated: {0}")]
    Guarantee(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Guarantee(_) => 1,
            _ => 2,
        }
    }
}

impl From<pqc_core::Error> for CliError {
    fn from(e: pqc_core::Error) -> Self {
        match e {
            pqc_core::Error::Precondition(_) | pqc_core::Error::KeyOutOfRange { .. } => {
                CliError::Precondition(e.to_string())
            }
            pqc_core::Error::GuaranteeViolated(m) => CliError::Guarantee(m),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

/// Text for standard output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    pub fn new(stdout: String, ok: bool) -> Self {
        Self {
            stdout,
            code: if ok { 0 } else { 1 },
        }
    }
}
