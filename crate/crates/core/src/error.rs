use thiserror::Error;

use crate::tate::Bidegree;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} must be strictly increasing, got {values:?}")]
    NotIncreasing {
        what: &'static str,
        values: Vec<i64>,
    },

    #[error("{what} must be nonnegative, got {values:?}")]
    Negative {
        what: &'static str,
        values: Vec<i64>,
    },

    #[error("not a submotive: summand {bidegree} exceeds its multiplicity in the target")]
    NotASubmotive { bidegree: Bidegree },

    #[error("generator index {index} is outside the range {lo}..={hi} of {ring}")]
    IndexOutOfRange {
        index: u32,
        lo: u32,
        hi: u32,
        ring: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
