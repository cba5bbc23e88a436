use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid workload parameter: {0}")]
    InvalidParam(String),
    #[error("unknown distribution `{0}` (expected uniform, normal, skewed, nearly-sorted or high-duplicate)")]
    UnknownDistribution(String),
    #[error("unknown algorithm `{0}` (expected zsort, merge or lsd-radix)")]
    UnknownAlgorithm(String),
    #[error("{path}: unsupported key file extension (use .bin, .txt or .rec)")]
    UnknownFormat { path: PathBuf },
    #[error("{path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("payload {payload} appears more than once in the input")]
    PayloadCollision { payload: u64 },
    #[error(
        "{algorithm} on {distribution} n={size}: output failed verification at index {index:?}"
    )]
    Verification {
        algorithm: String,
        distribution: String,
        size: usize,
        index: Option<usize>,
    },
    #[error("cannot allocate {0} bytes for the cache flush buffer")]
    Alloc(usize),
    #[error("benchmark matrix is empty")]
    EmptyMatrix,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Sort(#[from] zsort::SortError),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
