use thiserror::Error;

/// A violated 3-PARTITION instance invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("k and s must be positive (k={k}, s={s})")]
    NonPositive { k: u64, s: u64 },
    #[error("length violation: expected 3k = {expected} integers, got {got}")]
    Length { expected: usize, got: usize },
    #[error("bound violation at index {index}: a = {value} is not strictly between s/4 and s/2 (s = {s})")]
    Bound { index: usize, value: u64, s: u64 },
    #[error("sum violation: integers sum to {got}, expected k*s = {expected}")]
    Sum { expected: u64, got: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("invalid triple solution: {0}")]
    InvalidSolution(String),
    #[error("instance too large for exact solver: {0}")]
    TooLarge(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("fixed point check failed: {0}")]
    FixedPoint(String),
    #[error("overflow guard: {0}")]
    Overflow(String),
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("gadget {0} has no strict majority colour")]
    NoMajority(usize),
    #[error("partitioner broke its balance guarantee: {0}")]
    BalanceViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
