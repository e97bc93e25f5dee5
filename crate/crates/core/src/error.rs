use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("grading error: {0}")]
    GradingError(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent overflow (exponents are limited to 65535)")]
    ExponentOverflow,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("group has more than {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("modular case not supported: characteristic {p} divides the group order {order}")]
    ModularNotSupported { p: u64, order: usize },
    #[error("B/I does not have finite length")]
    NotFiniteColength,
    #[error("F_{p} has no primitive {m}-th root of unity")]
    FieldUnsuitable { p: u64, m: u32 },
    #[error("degree {degree} is not divisible by scale {scale}")]
    ScaleError { degree: i64, scale: i64 },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
