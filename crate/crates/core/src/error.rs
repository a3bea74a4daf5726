use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in F_p")]
    DivisionByZero,

    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("characteristic {p} must exceed the matrix size {n}")]
    CharacteristicTooSmall { p: u64, n: usize },

    #[error("F_{p} has no root of unity of order {n} ({n} does not divide {p} - 1)")]
    NoRootOfUnity { p: u64, n: u64 },

    #[error("{q} is not a root of unity of order exactly {n} in F_{p}")]
    NotPrimitiveRoot { q: u64, n: u64, p: u64 },

    #[error("a primitive root of unity is required but none is attached to the field")]
    MissingRoot,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
