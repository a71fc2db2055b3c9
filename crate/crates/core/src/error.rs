use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("category validation failed: {0}")]
    Validation(String),
    #[error("semisimplicity failure: {0}")]
    SemisimplicityFailure(String),
    #[error("rank of `{0}` is not invertible")]
    NonInvertibleRank(String),
    #[error("word mismatch: {0}")]
    WordMismatch(String),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("illegal destabilization: {0}")]
    IllegalDestabilize(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size guard: {what} needs {needed} entries, limit is {limit}")]
    SizeGuard {
        what: String,
        needed: u128,
        limit: u128,
    },
    #[error("enumeration too large: {0} cases")]
    EnumerationTooLarge(u128),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
