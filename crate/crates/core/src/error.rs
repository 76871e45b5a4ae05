use thiserror::Error;

use crate::graph::PatternId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("{what} is {actual}, above the limit of {limit}")]
    Guard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("no dynamic program for pattern {0}; use the brute-force oracle")]
    NoDynamicProgram(PatternId),

    #[error("edge bound is undefined on the empty graph")]
    EmptyGraph,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
