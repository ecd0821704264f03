//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("interval left endpoint {left} exceeds right endpoint {right}")]
    InvalidInterval { left: String, right: String },
    #[error("translate length is negative: {0}")]
    NegativeLength(String),
    #[error("union is not contained in the ambient interval")]
    NotInAmbient,
    #[error("empty union has no component norm")]
    EmptyUnion,
    #[error("empty set has no epsilon decomposition")]
    EmptySet,
    #[error("epsilon is negative: {0}")]
    NegativeEpsilon(String),
    #[error("enumeration cap {cap} exceeded at depth {depth}")]
    CapExceeded { cap: usize, depth: u64 },
    #[error("comparison still undecided at index {index} after refinement budget {budget}")]
    Undecided { index: u64, budget: usize },
    #[error("term at index {index} is not positive")]
    NonpositiveTerm { index: u64 },
    #[error("terms increase at index {index}")]
    NotMonotone { index: u64 },
    #[error("group size at position {k} must be at least 1")]
    InvalidGroupSize { k: usize },
    #[error("invalid m-sequence at index {index}: {reason}")]
    InvalidMSeq { index: u64, reason: &'static str },
    #[error("m-sequence never reaches {target} within scan budget {budget}")]
    ScheduleScanExhausted { target: u64, budget: u64 },
    #[error("reference set is empty below horizon {horizon}")]
    EmptyReference { horizon: u64 },
    #[error("exact remainders required: series tail has no closed form")]
    ExactnessRequired,
    #[error("ladder property {property} fails at level {k}")]
    LadderViolation { property: &'static str, k: usize },
    #[error("remainder bracket q_k < r_(N_k) < 2*q_k fails at level {k}")]
    BracketViolation { k: usize },
    #[error("stretch lower bound fails at level {k}: delta {delta} < bound {bound}")]
    DeltaBoundViolation { k: usize, delta: String, bound: String },
    #[error("census cross-check fails at level {k}: {detail}")]
    CensusMismatch { k: usize, detail: String },
    #[error("window cross-check fails at level {k}")]
    WindowMismatch { k: usize },
    #[error("measure cross-check fails at level {k}: closed form {closed} vs iterate {direct}")]
    MeasureMismatch {
        k: usize,
        closed: String,
        direct: String,
    },
    #[error("residual is not positive and strictly decreasing at level {k}")]
    ResidualViolation { k: usize },
    #[error("level must be at least {min}, got {k}")]
    LevelTooSmall { k: usize, min: usize },
    #[error("invalid series descriptor: {0}")]
    BadDescriptor(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
