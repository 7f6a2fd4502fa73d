use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("invalid parameter name {0:?}")]
    InvalidName(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("singular matrix (determinant {det})")]
    Singular { det: String },
    #[error("entry ({row}, {col}) uses parameter {var} outside the declared field")]
    FieldMismatch { row: usize, col: usize, var: String },
    #[error("parse error at byte {offset}: {message}")]
    ParseExpr { offset: usize, message: String },
    #[error("evaluation hits a pole of {0}")]
    Pole(String),
}
