use std::fmt;

use thiserror::Error;

/// Failure to read a value in the scalar text grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {what} {text:?}: {source}")]
    Parse {
        what: String,
        text: String,
        #[source]
        source: ParseError,
    },

    #[error("base identity is unbalanced: left sums to {left_sum}, right sums to {right_sum}")]
    UnbalancedBase { left_sum: String, right_sum: String },

    #[error("invalid base identity: {0}")]
    BaseShape(String),

    #[error("shift vector must contain at least one value")]
    EmptyShifts,

    #[error("level {requested} exceeds the configured limit of {limit}")]
    LevelLimit { requested: usize, limit: usize },

    #[error("value {value} uses radicands outside the pair's ring {ring:?}")]
    RingMismatch { value: String, ring: Vec<u64> },

    #[error("power {power} is outside 1..={level}")]
    InvalidPower { power: u32, level: usize },

    #[error("malformed pair: {0}")]
    MalformedPair(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("reduction broke the identity at power {power}: {detail}")]
    ReductionInvariant { power: u32, detail: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
