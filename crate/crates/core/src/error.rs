use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("format error on line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("invalid token {0:?}: tokens must be non-empty and contain no whitespace")]
    InvalidToken(String),

    #[error("unknown item: {0}")]
    UnknownItem(String),

    #[error("relative support is undefined for an empty database")]
    DivisionDomain,

    #[error("invalid support threshold: {0}")]
    Threshold(String),

    #[error("capacity exceeded: {what} is {actual}, limit is {limit}")]
    Capacity {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("memory exhausted: {0}")]
    MemoryExhausted(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("experiment failed at point {index} ({param} = {value}): {source}")]
    Point {
        index: usize,
        param: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}
