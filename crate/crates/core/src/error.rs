use std::path::PathBuf;

use thiserror::Error;

use crate::syntax::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("prefix length {n} exceeds transcript length {len}")]
    PrefixOutOfRange { n: usize, len: usize },

    #[error("transcript has {queries} queries but {answers} answers")]
    TranscriptLength { queries: usize, answers: usize },

    #[error("invalid privacy configuration: {0}")]
    InvalidConfiguration(String),

    #[error("the candidate knowledge base universe is empty")]
    EmptyUniverse,

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid fuzz bounds: {0}")]
    FuzzBounds(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}
