use hsx_exact::ExactError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("index {index} out of range 1..={dim} at byte {offset}")]
    IndexRange { index: usize, dim: usize, offset: usize },
    #[error("Jacobi identity fails: d(de^{slot}) = {witness}")]
    Jacobi { slot: usize, witness: String },
    #[error("json schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("not a complex structure: {0}")]
    NotComplex(String),
    #[error("partial assignment does not span: {0}")]
    NonSpanning(String),
    #[error("inconsistent assignment: {0}")]
    Inconsistent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Unsolvable(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
