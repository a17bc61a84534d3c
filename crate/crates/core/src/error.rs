//! Error type shared by every module.

use thiserror::Error;

/// Failures surfaced by the library and mapped to CLI exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text, with a 1-based location.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed input that violates a semantic rule (non-prime p, s over cap, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A mathematical precondition or certificate failed.
    #[error("diagnostic [{code}]: {message}")]
    Diagnostic { code: &'static str, message: String },
    /// The input lies outside the class of charts the tool handles.
    #[error("unsupported [{code}]: {message}")]
    Unsupported { code: &'static str, message: String },
}

impl Error {
    pub fn diag(code: &'static str, message: impl Into<String>) -> Self {
        Error::Diagnostic {
            code,
            message: message.into(),
        }
    }

    pub fn unsupported(code: &'static str, message: impl Into<String>) -> Self {
        Error::Unsupported {
            code,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }

    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Invalid(_) => 2,
            Error::Diagnostic { .. } => 3,
            Error::Unsupported { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
