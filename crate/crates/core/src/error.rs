use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("header mismatch: expected `{expected}`, found `{found}`")]
    HeaderMismatch { expected: String, found: String },
    #[error("row {row}: cannot map `{value}` in column {column}")]
    Unmappable {
        row: usize,
        column: String,
        value: String,
    },
    #[error("row {row}: expected {expected} cells, found {found}")]
    RowWidth {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("empty file: no data rows")]
    Empty,
    #[error("non-finite value for {attribute}")]
    NonFinite { attribute: String },
    #[error("schema error in `{attribute}`: {message}")]
    Schema { attribute: String, message: String },
    #[error("unknown dataset preset `{0}`")]
    UnknownPreset(String),
    #[error("{0}")]
    Precondition(String),
}

/// A single invalid field of a run configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: &str, message: impl Into<String>) -> Self {
        FieldError {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error("invalid configuration: {}", join(.0))]
    InvalidConfig(Vec<FieldError>),
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {message}")]
    BadValue { key: String, message: String },
    #[error("metric list is empty")]
    EmptyMetricList,
    #[error("metric vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("layout mismatch: {0}")]
    Layout(String),
    #[error("empty test set")]
    EmptyTest,
    #[error("insufficient coverage: {0}")]
    InsufficientCoverage(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn join(errors: &[FieldError]) -> String {
    errors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
