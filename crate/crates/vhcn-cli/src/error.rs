//! CLI error type with stable exit codes.
//!
//! Exit codes: 0 success, 2 command-line usage (raised by the argument
//! parser), 3 scenario/catalog parse errors, 4 validation errors, 5
//! computation errors, 6 I/O errors.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed scenario or catalog file (syntax level).
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed input that violates a model invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// A model computation failed.
    #[error("computation error: {0}")]
    Compute(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 3,
            CliError::Validation(_) => 4,
            CliError::Compute(_) => 5,
            CliError::Io(_) => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
