use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("empty generator set")]
    EmptyInput,
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("generators have gcd {gcd}; the complement would be infinite")]
    NotNumerical { gcd: u64 },
    #[error("0 cannot be a gap")]
    ZeroGap,
    #[error("complement not closed under addition: {a} + {b} is listed as a gap")]
    NotClosed { a: u64, b: u64 },
    #[error("Frobenius number {frobenius:?} exceeds the supported window")]
    TooLarge { frobenius: Option<i64> },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("not an ideal: {element} + {generator} is missing")]
    NotAnIdeal { element: i64, generator: i64 },
    #[error("empty set is not a fractional ideal")]
    Empty,
    #[error("{0} is not a gap of the semigroup")]
    NotAGap(i64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A configured budget was exceeded before the computation finished.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what}: limit {limit} exceeded")]
pub struct LimitExceeded {
    pub what: &'static str,
    pub limit: u64,
}

impl LimitExceeded {
    pub fn new(what: &'static str, limit: u64) -> Self {
        LimitExceeded { what, limit }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("matrix is not square")]
    Shape,
}
