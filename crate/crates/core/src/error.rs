use thiserror::Error;

/// Errors reported by the toolkit.
///
/// Mathematical outcomes that are answers rather than failures (singular Gram
/// matrices, infeasible or unbounded programs, empty vertex enumerations) are
/// modeled as verdict enums on the operations themselves, not as errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coordinate index {index} out of range for dimension {dim}")]
    CoordinateOutOfRange { index: usize, dim: usize },

    #[error("the polyhedron is empty")]
    EmptyPolyhedron,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid rational literal {text:?}")]
    InvalidNumber { text: String },

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("not a 0/1 permutation matrix: {0}")]
    NotPermutation(String),

    #[error("city count {n} exceeds the enumeration cap {cap}")]
    TourCapExceeded { n: usize, cap: usize },

    #[error("city count must be at least 2, got {0}")]
    TooFewCities(usize),

    #[error("the feasible set is empty")]
    InfeasibleSet,

    #[error("the objective is unbounded over the feasible set")]
    UnboundedObjective,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
