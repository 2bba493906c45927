use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: expected {expected} points at spacing {expected_spacing}, got {found} points at spacing {found_spacing}")]
    GridMismatch {
        expected: usize,
        expected_spacing: f64,
        found: usize,
        found_spacing: f64,
    },

    #[error("band with step {target} exceeds the representable band of a grid with spacing {spacing}")]
    BandTooWide { target: f64, spacing: f64 },

    #[error("Sobolev index {0} is above the supported cap of {cap}", cap = crate::spectral::MAX_SOBOLEV_INDEX)]
    SobolevIndex(usize),

    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("reference solution rejected: {0}")]
    ReferenceInvalid(String),

    #[error("rate fit needs at least 3 rows with positive error, got {0}")]
    InsufficientData(usize),

    #[error("malformed field snapshot at line {line}: {reason}")]
    Snapshot { line: usize, reason: String },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
