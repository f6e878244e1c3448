use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is out of range (must be a prime below 2^31)")]
    ModulusOutOfRange(u64),

    #[error("field context mismatch: {0}")]
    ContextMismatch(String),

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("exponent overflow (exponents are capped at 2^31 - 1)")]
    ExponentOverflow,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("duplicate index {0} in bracket")]
    DuplicateIndex(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("expected a subset of size {expected}, got {got}")]
    WrongSubsetSize { expected: usize, got: usize },

    #[error("input is not homogeneous")]
    Inhomogeneous,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),
}
