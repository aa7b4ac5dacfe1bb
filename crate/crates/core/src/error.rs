use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),

    #[error("field of order {p}^{e} exceeds the supported maximum of {max}")]
    FieldTooLarge { p: u32, e: u32, max: u64 },

    #[error("malformed polynomial: {0}")]
    MalformedPolynomial(String),

    #[error(
        "polynomial is reducible: divisible by {factor:?} (coefficients, least significant first)"
    )]
    Reducible { factor: Vec<u32> },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrices are defined over different fields")]
    FieldMismatch,

    #[error("reduction step index {j} outside [{m}, {max}]", max = 2 * m - 2)]
    StepOutOfRange { j: usize, m: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("n must be a divisor of Q-1 (n = {n}, Q-1 = {group_order})")]
    OrderNotDivisor { n: u64, group_order: u64 },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("locators {first} and {second} coincide")]
    DuplicateLocator { first: usize, second: usize },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("row selection rejected at row {row}: {reason}")]
    Selection { row: usize, reason: String },

    #[error("enumeration of {required} messages exceeds the limit of {limit}")]
    LimitExceeded { required: u128, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}
