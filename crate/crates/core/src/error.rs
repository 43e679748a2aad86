use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("point set must contain at least one point")]
    EmptyPointSet,

    #[error("coordinates must be finite (found NaN or infinity)")]
    NonFiniteCoordinate,

    #[error("center list must be nonempty")]
    EmptyCenters,

    #[error("outlier count z = {z} must be smaller than n = {n}")]
    TooManyOutliers { z: usize, n: usize },

    #[error("z must be at least 1: the threshold eta*rho/z is undefined for z = 0")]
    ZeroOutlierThreshold,

    #[error("point index {index} out of bounds for n = {n}")]
    IndexOutOfBounds { index: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large for exhaustive oracle: n <= {max_n}, k <= {max_k}, z <= {max_z} required")]
    OracleTooLarge {
        max_n: usize,
        max_k: usize,
        max_z: usize,
    },

    #[error("cannot parse cell at row {row}, column {column}: {value:?}")]
    CsvCell {
        row: usize,
        column: usize,
        value: String,
    },

    #[error("ragged csv row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
