use thiserror::Error;

/// Errors produced while building fields, graphs and codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} exceeds the supported maximum of {max}", max = crate::algebra::MAX_FIELD_ORDER)]
    FieldTooLarge(u32),
    #[error("ring modulus must be at least 2, got {0}")]
    RingTooSmall(u32),
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("{value} is not an element of {domain}")]
    NotInDomain { value: u32, domain: &'static str },
    #[error("restriction set must not be empty")]
    EmptyRestriction,
    #[error("restriction contains {0} more than once")]
    DuplicateRestriction(u32),
    #[error("graph would have {edges} edges, budget is {budget}")]
    EdgeBudgetExceeded { edges: u64, budget: u64 },
    #[error("dense matrix of {rows}x{cols} bits exceeds the budget of {budget} bits")]
    DenseBudgetExceeded { rows: usize, cols: usize, budget: u64 },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("code has dimension zero")]
    ZeroDimension,
    #[error("graph has an empty side")]
    EmptySide,
    #[error("density needs at least two vertices")]
    DegenerateGraph,
    #[error("alist parse error: {0}")]
    Alist(String),
    #[error("invalid graph spec: {0}")]
    Spec(String),
    #[error("invalid sweep configuration: {0}")]
    Sweep(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
