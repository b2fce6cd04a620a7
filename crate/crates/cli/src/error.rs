use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{0}: {1}")]
    Io(PathBuf, #[source] std::io::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] displab::Error),
    #[error("thread pool: {0}")]
    Pool(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
