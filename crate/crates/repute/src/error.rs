use std::io;
use std::path::PathBuf;

pub type Result<T, E = ReputeError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum ReputeError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("{path}: {source}")]
    Dataset {
        path: PathBuf,
        #[source]
        source: repute_core::Error,
    },
    #[error(transparent)]
    Core(#[from] repute_core::Error),
    #[error("label {0} is not a user of the dataset")]
    UnknownLabel(String),
    #[error("{0}")]
    Usage(String),
    #[error("writing table: {0}")]
    Table(#[from] csv::Error),
}

impl ReputeError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        ReputeError::Io { path: path.into(), source }
    }

    /// Process exit status: 1 for usage errors, 2 for everything data related.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReputeError::Usage(_) => 1,
            _ => 2,
        }
    }
}
