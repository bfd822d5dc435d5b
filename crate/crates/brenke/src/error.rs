use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Falsified = 1,
    Precision = 2,
    Cache = 3,
    Inconclusive = 4,
    Usage = 64,
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] brenke_core::Error),
    #[error("cache {path}: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },
    #[error("cache {path}: {source}")]
    CacheIo { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("output: {0}")]
    Output(String),
}

impl AppError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Core(brenke_core::Error::PrecisionExhausted | brenke_core::Error::SignUnknown) => ExitCode::Precision,
            AppError::Core(brenke_core::Error::InvalidParameter(_)) | AppError::Usage(_) => ExitCode::Usage,
            AppError::Core(_) | AppError::Output(_) => ExitCode::Precision,
            AppError::CacheCorrupt { .. } | AppError::CacheIo { .. } => ExitCode::Cache,
        }
    }
}

pub type Result<T> = std::result::Result<T, AppError>;
