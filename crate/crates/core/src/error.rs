use thiserror::Error;

use crate::providers::Violation;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid simple id {0} for a table with {1} simples")]
    InvalidSimple(usize, usize),

    #[error("unknown simple name `{0}`")]
    UnknownName(String),

    #[error("{0}")]
    Domain(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("table validation failed: {}", summarize(.0))]
    Validation(Vec<Violation>),

    #[error("parabolic substructure rejected: {0}")]
    Parabolic(String),

    #[error("search bound {given} is too small, need at least {required}")]
    BoundTooSmall { given: usize, required: usize },

    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(usize),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn summarize(violations: &[Violation]) -> String {
    let mut out = violations
        .iter()
        .take(5)
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ");
    if violations.len() > 5 {
        out.push_str(&format!("; ... ({} more)", violations.len() - 5));
    }
    out
}

pub type Result<T> = std::result::Result<T, Error>;
