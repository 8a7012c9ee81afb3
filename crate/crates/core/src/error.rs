use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degrees of freedom in a bipartition must differ, got {0} twice")]
    SameDof(&'static str),

    #[error("matrix is not Hermitian: max |A - A^H| = {0:e}")]
    NotHermitian(f64),

    #[error("step counts differ: oracle at {oracle}, operator state at {state}")]
    StepMismatch { oracle: usize, state: usize },

    #[error("vectors are not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("number of steps must be at least 1, got {0}")]
    InvalidSteps(i64),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("invalid walk specification: {0}")]
    InvalidSpec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
