use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computation would exceed the configured memory budget.
    #[error("resource limit: {what} needs {required_bytes} bytes but the budget is {budget_bytes} bytes")]
    Resource {
        what: String,
        required_bytes: u128,
        budget_bytes: u128,
    },

    /// An exhaustive or dense computation over a size cap (vertices, qubits).
    #[error("resource limit: {what} has size {size}, above the cap of {cap}")]
    TooLarge { what: String, size: usize, cap: usize },

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
