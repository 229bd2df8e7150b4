use std::path::PathBuf;

use semiwork_core::classify::ClassifyError;
use semiwork_core::enumerate::EnumerateError;
use semiwork_core::zoo::ZooError;
use semiwork_core::{DeriveError, ParseError, TableError};

#[derive(Debug, thiserror::Error)]
pub enum WorkbenchError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid semigroup: {0}")]
    Table(#[from] TableError),
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error("{0}")]
    Usage(String),
}

impl WorkbenchError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        WorkbenchError::Io {
            path: path.into(),
            source,
        }
    }
}
