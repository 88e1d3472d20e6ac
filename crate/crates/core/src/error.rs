use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {q} exceeds the configured bound {bound}")]
    OrderTooLarge { q: u64, bound: u32 },
    #[error("element {0} is outside the field")]
    BadElement(u32),
    #[error("leading coefficient of a quadratic must be non-zero")]
    ZeroLeadingCoefficient,
    #[error("zero vector does not define a projective point")]
    ZeroVector,
    #[error("the zero form does not define a conic")]
    ZeroForm,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point has rank {0}, expected rank 2")]
    NotRankTwo(usize),
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("a linear system needs between 2 and 5 generators, got {0}")]
    TrivialSystem(usize),
    #[error("label {label} is not defined for q {parity}")]
    ParityMismatch { label: String, parity: &'static str },
    #[error("q = {q} exceeds the exhaustive bound {bound}")]
    OracleBound { q: u32, bound: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
