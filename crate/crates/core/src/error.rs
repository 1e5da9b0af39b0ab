use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Stream(#[from] io::Error),

    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnCount { line: usize, expected: usize, found: usize },

    #[error("line {line}: unknown label {label:?}")]
    UnknownLabel { line: usize, label: String },

    #[error("line {line}: duplicate id {id:?}")]
    DuplicateId { line: usize, id: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("record {0:?} has no label")]
    Unlabeled(String),

    #[error("cannot downsample {label} to {target}: only {available} records")]
    DownsampleTarget {
        label: Label,
        target: usize,
        available: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("corpus contains no non-empty document")]
    EmptyCorpus,

    #[error("empty split")]
    EmptySplit,

    #[error("non-finite loss at epoch {0}")]
    Diverged(usize),

    #[error("missing feature vector for id {0:?}")]
    MissingFeatures(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
