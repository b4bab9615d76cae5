//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by field construction, line resolution and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("no bundled default modulus for GF({p}^{m}) and none supplied")]
    NoDefaultModulus { p: u64, m: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial degree {got} does not match expected {want}")]
    DegreeMismatch { got: usize, want: usize },
    #[error("{0} is outside the supported range")]
    OutOfRange(u64),
    #[error("discrete-log tables unavailable for field of order {order}")]
    TableUnavailable { order: u64 },
    #[error("polynomial is not primitive over GF({q})")]
    NotPrimitive { q: u64 },
    #[error("line index {k} out of range 1..{e}")]
    KOutOfRange { k: u64, e: u64 },
    #[error("degenerate hyperplane intersection at k={k}: {detail}")]
    DegenerateIntersection { k: u64, detail: String },
    #[error("subfield modulus incompatible with the ambient primitive element (k={k})")]
    IncompatibleSubfieldModulus { k: u64 },
    #[error("line through equal indices {0} is undefined")]
    EqualIndices(u64),
    #[error("index ({i},{j}) out of range for order {order}")]
    IndexOutOfRange { i: u64, j: u64, order: u64 },
    #[error("{eps} does not divide {e}")]
    NotADivisor { eps: u64, e: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("field order {order} exceeds the oracle budget {budget}")]
    OracleBudgetExceeded { order: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
