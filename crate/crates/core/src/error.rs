use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent too large")]
    ExponentOverflow,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("unit ideal")]
    UnitIdeal,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("ideal is not saturated with respect to the irrelevant ideal")]
    Unsaturated,
    #[error("missing table entry: {0}")]
    MissingEntry(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
