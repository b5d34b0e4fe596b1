use thiserror::Error;

/// Error type shared by all modules. Diagnostic magnitudes are reported as
/// `f64` regardless of the scalar the computation ran in.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |a[i][j] - conj(a[j][i])| = {max_dev:e}")]
    NonHermitian { max_dev: f64 },

    #[error("trace must be 1, got {trace}")]
    TraceNotUnit { trace: f64 },

    #[error("operator is not positive semidefinite: min eigenvalue = {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("rank {rank} invalid for dimension {dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("invalid annealing schedule: {0}")]
    ScheduleInvalid(String),

    #[error("unknown family: {0:?} (expected werner, mem or pdc)")]
    UnknownFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
