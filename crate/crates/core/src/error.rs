use thiserror::Error;

/// Errors raised by field construction, matrix algebra, enumeration and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus {0:?} is not irreducible of the requested degree")]
    ReducibleModulus(Vec<u32>),
    #[error("field order {0} exceeds the supported maximum")]
    OrderTooLarge(String),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element code {code} is out of range for a field of order {q}")]
    InvalidElement { code: u32, q: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("empty input")]
    EmptyInput,
    #[error("all inputs are zero")]
    ZeroSpan,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("subspace is not of constant rank")]
    NotConstantRank,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("construction failed its own verification: {0}")]
    InternalVerificationFailed(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
