use thiserror::Error;

use crate::vector::IntVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("generators do not span a pointed cone")]
    NotPointed,

    #[error("column {0} is zero; the solution set would be infinite")]
    ZeroColumn(usize),

    #[error("point {0} is not in the cone of the semigroup")]
    PointNotInCone(IntVector),

    #[error("generators are not coprime (gcd = {0})")]
    NotPrimitive(u64),

    #[error("empty family")]
    EmptyFamily,

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quasipolynomial validation failed at b = {b}: expected {expected}, got {predicted}")]
    ValidationFailed { b: u64, expected: String, predicted: String },

    #[error("case assertion requires every member to be pointed; member {0} is not")]
    CaseAssertionInvalid(usize),

    #[error("hypothesis k >= d(r-1)+1 unmet ({generators} < {required}) and no partition found")]
    HypothesisUnmet { generators: usize, required: usize },

    #[error("theorem contract violated: {0}")]
    Anomaly(String),
}

pub type Result<T> = std::result::Result<T, Error>;
