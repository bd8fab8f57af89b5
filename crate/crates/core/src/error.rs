use std::path::PathBuf;

use thiserror::Error;

use crate::enumerate::Packing;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("orbit closure exceeded {cap} candidate points; dedup tolerance is inconsistent")]
    OrbitOverflow { cap: usize },

    #[error("cluster rejected: {0}")]
    InvalidCluster(String),

    #[error("embedding invalid: {0}")]
    EmbeddingInvalid(String),

    #[error("enumeration limit exceeded ({reason}); partial packing has {} points", partial.points.len())]
    LimitExceeded {
        reason: LimitKind,
        partial: Box<Packing>,
    },

    #[error("parse error in {path} at line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error in field `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    MaxPoints,
    MaxCoordinate,
}

impl std::fmt::Display for LimitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LimitKind::MaxPoints => f.write_str("max_points"),
            LimitKind::MaxCoordinate => f.write_str("max_coordinate"),
        }
    }
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
