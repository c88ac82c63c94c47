use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for dimension {n}")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("dimension {n} outside supported range 1..={max}")]
    DimensionOutOfRange { n: usize, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("truth table has length {got}, expected {expected}")]
    TableLength { got: usize, expected: usize },

    #[error("entry {index} is {value}, expected -1 or +1")]
    NotASign { index: usize, value: i64 },

    #[error("spectrum does not invert to a Boolean function")]
    NonBooleanSpectrum,

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what} {value} out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("computation exceeds feasibility limit: {0}")]
    Infeasible(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: impl TryInto<i64>, range: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            value: value.try_into().unwrap_or(i64::MAX),
            range: range.into(),
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
