use thiserror::Error;

/// Errors produced by the library. Row/column indices carried in variants are
/// 1-based so they can be shown to users unchanged.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("entry ({row}, {col}) = {value} is not a positive finite number")]
    NonPositiveEntry { row: usize, col: usize, value: f64 },

    #[error("entries ({row}, {col}) and ({col}, {row}) are not reciprocal: |a_ij*a_ji - 1| = {residual}")]
    NotReciprocal {
        row: usize,
        col: usize,
        residual: f64,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {n} is too small, need at least {min}")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("principal submatrix would be empty")]
    EmptyResult,

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("vector entry {index} = {value} is not a positive finite number")]
    NonPositiveVector { index: usize, value: f64 },

    #[error("invalid coefficient vector: {0}")]
    InvalidWeights(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid tolerance configuration: {0}")]
    InvalidConfig(String),

    #[error("power iteration did not converge within {max_iters} iterations")]
    NoConvergence { max_iters: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("matrix is not in the required form: {0}")]
    FormViolated(String),

    #[error("matrix is not a triple perturbed consistent matrix within a 4x4 block")]
    NotTriplePerturbed,

    #[error("no admissible canonical form found: {0}")]
    CanonicalizationFailed(String),

    #[error("parameters ({0}, {1}, {2}) do not satisfy any of the admissible orderings")]
    ConditionViolated(f64, f64, f64),

    #[error("the cone of columns is contained in the efficient set; no inefficient witness exists")]
    HullContained,

    #[error("witness search exhausted after {steps} shrink steps")]
    SearchExhausted { steps: usize },

    #[error("vector is not efficient for the matrix")]
    NotEfficient,

    #[error("x = 1 with a non-constant vector")]
    DegenerateX,

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
