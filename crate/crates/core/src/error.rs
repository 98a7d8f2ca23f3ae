//! Error type shared by all modules of the crate.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    /// A malformed input line. The line number is 1-based and refers to the
    /// physical line in the parsed text, counting skipped lines.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A validation failure not tied to a single input line.
    #[error("{0}")]
    Invalid(String),

    #[error("line counts differ: {left_path} has {left} lines, {right_path} has {right}")]
    LineCountMismatch {
        left_path: String,
        left: usize,
        right_path: String,
        right: usize,
    },

    #[error("record {record_id}: idiom {idiom} not found in the idiom list")]
    UnknownIdiom { record_id: String, idiom: String },

    #[error("record {record_id}: missing hypothesis")]
    MissingHypothesis { record_id: String },

    #[error("record {record_id}: missing trigger result")]
    MissingTrigger { record_id: String },

    #[error("{} record(s) missing references: {}", .0.len(), .0.join(", "))]
    MissingReferences(Vec<String>),

    #[error("annotation references unknown record {record_id}")]
    UnknownRecord { record_id: String },

    #[error("duplicate annotation for record {record_id}")]
    DuplicateAnnotation { record_id: String },

    #[error("empty corpus")]
    EmptyCorpus,
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
