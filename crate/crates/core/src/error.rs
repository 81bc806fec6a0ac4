use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// Header or column layout does not match the 30-feature schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// A cell failed to parse or fell outside its column domain.
    /// Row numbers are 1-based data rows (the header is row 0).
    #[error("row {row}, column {column}: {message}")]
    Cell {
        row: usize,
        column: String,
        message: String,
    },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("invalid classifier spec: {0}")]
    InvalidSpec(String),

    /// Training set violates a family precondition (e.g. a single class
    /// where a margin or boosting family needs both).
    #[error("invalid training set: {0}")]
    InvalidTrainingSet(String),

    #[error("training diverged: {0}")]
    Diverged(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("url parse error: {0}")]
    UrlParse(String),

    #[error("evidence file error: {0}")]
    Evidence(String),

    #[error("threshold config error: {0}")]
    Thresholds(String),

    #[error("no rows could be ingested: {0}")]
    NoRows(String),

    #[error("unknown output format: {0}")]
    UnknownFormat(String),

    #[error("model file error: {0}")]
    Model(String),
}

pub type Result<T> = std::result::Result<T, Error>;
