use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("n = {n} is out of range (need n >= {min})")]
    InvalidN { n: usize, min: usize },
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("symbol {0} is not available for this n")]
    OutOfRange(String),
    #[error("basis images are rank deficient: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("vector is not in the span of the basis images")]
    NotInSpan,
    #[error("malformed word: {0}")]
    MalformedWord(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
