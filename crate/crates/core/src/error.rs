use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("no finite field of order {0} is supported (primes below 2^16 and 4, 8, 9)")]
    UnsupportedField(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspaces live in different spaces: {0}")]
    AmbientMismatch(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("series does not terminate: no upper parameter is q^-m with m >= 0")]
    NonTerminating,

    #[error("vanishing denominator: {0}")]
    VanishingDenominator(String),

    #[error("denominator divisible by p = {0}")]
    DenominatorNotCoprime(u64),

    #[error("malformed block: {0}")]
    MalformedBlock(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
