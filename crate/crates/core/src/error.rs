use thiserror::Error;

/// Errors raised while building states or running the measurement pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("internal state must have dimension >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{what} is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { what: &'static str, norm_sq: f64 },
    #[error("{what} = {value} is outside its allowed range")]
    OutOfRange { what: &'static str, value: f64 },
    #[error("{0} contains a non-finite value")]
    NonFinite(&'static str),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("non-physical density matrix (smallest eigenvalue {0:e})")]
    NonPhysical(f64),
    #[error("operation requires internal dimension 2, got {0}")]
    RequiresQubit(usize),
    #[error("invalid fringe scan: {0}")]
    InvalidScan(String),
    #[error("fringe fit failed: {0}")]
    FitFailed(String),
    #[error("tomography data is missing setting {0}")]
    MissingSetting(String),
    #[error("tomography data contains setting {0} more than once")]
    DuplicateSetting(String),
    #[error("shots must be >= 1")]
    ZeroShots,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("scenario '{scenario}': field '{field}': {message}")]
    Validation {
        scenario: String,
        field: String,
        message: String,
    },
    #[error("scenario '{scenario}': {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{}: {source}", path.display())]
    File {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl Error {
    pub(crate) fn validation(
        scenario: impl Into<String>,
        field: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::Validation {
            scenario: scenario.into(),
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn file(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::File {
            path: path.to_path_buf(),
            source,
        }
    }

    /// True for errors caused by the filesystem rather than by the input data.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) | Error::File { .. } => true,
            Error::Scenario { source, .. } => source.is_io(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
