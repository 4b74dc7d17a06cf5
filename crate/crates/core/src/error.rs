use std::path::PathBuf;

/// Errors produced anywhere in the solver and experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid grid size {0}: must be even and >= 8")]
    InvalidGrid(usize),

    #[error("grid mismatch: {0} vs {1}")]
    GridMismatch(usize, usize),

    #[error("spectral field is not Hermitian-symmetric (max defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("vorticity has nonzero mean {mean:e}; stream function inversion is ill-posed")]
    NonzeroMean { mean: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("CFL number {cfl:.4} exceeds limit {limit:.4}")]
    CflViolation { cfl: f64, limit: f64 },

    #[error("non-finite values in state")]
    NonFinite,

    #[error("step failed at t = {t}: {source}")]
    StepFailed {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep member {param} = {value} failed: {source}")]
    SweepMember {
        param: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed file {path}: {reason}")]
    Format { path: PathBuf, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for the CLI: 1 configuration, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidGrid(_)
            | Error::InvalidParameter(_)
            | Error::Config(_)
            | Error::GridMismatch(..) => 1,
            Error::CflViolation { .. }
            | Error::NonFinite
            | Error::NotHermitian { .. }
            | Error::NonzeroMean { .. } => 2,
            Error::Io { .. } | Error::Format { .. } => 3,
            Error::StepFailed { source, .. } | Error::SweepMember { source, .. } => {
                source.exit_code()
            }
        }
    }
}
