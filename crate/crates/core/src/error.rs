use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = BenchError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Record {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("catalog {path}: duplicate mention id {mention_id:?} (line {line})")]
    DuplicateCatalogKey {
        path: PathBuf,
        mention_id: String,
        line: usize,
    },

    #[error("catalog {path}:{line}: {message}")]
    Catalog {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid prediction for instance {instance_id:?}: {message}")]
    InvalidPrediction {
        instance_id: String,
        message: String,
    },

    #[error("duplicate prediction for instance {0:?}")]
    DuplicatePrediction(String),

    #[error("missing predictions for {} instance(s): {}", .0.len(), .0.join(", "))]
    MissingPredictions(Vec<String>),

    #[error("instance {0:?} has an empty ground truth")]
    EmptyGroundTruth(String),

    #[error("nothing to aggregate: the instance set is empty")]
    EmptyInstanceSet,

    #[error("fingerprint mismatch: {expected} (instances) vs {found} (predictions)")]
    FingerprintMismatch { expected: String, found: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }
}
