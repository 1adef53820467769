use thiserror::Error;

/// Syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl ParseError {
    pub fn new(line: u32, column: u32, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two elements from different backends were mixed in one operation.
    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: String, found: String },

    /// `multiple` requires a multiplicity of at least 1.
    #[error("multiplicity must be at least 1")]
    InvalidMultiplicity,

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A bounded search ran out of steps before reaching a decision.
    #[error("budget exhausted: {what} exceeded {limit} steps")]
    BudgetExhausted { what: &'static str, limit: u32 },

    /// A reciprocal was requested of a stream that never separated from zero.
    #[error("cannot separate enclosure from zero within {max_level} refinement levels")]
    ZeroDivision { max_level: u32 },

    /// A backend descriptor failed validation.
    #[error("invalid backend descriptor: {0}")]
    Descriptor(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn mismatch(expected: &crate::backend::Backend, found: &crate::backend::Backend) -> Self {
        Error::BackendMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
