use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("n = {n} is below the admissible threshold: need n > {threshold}")]
    BelowThreshold { n: u64, threshold: String },

    #[error("epsilon = {eps} is not below the positivity threshold {threshold}")]
    EpsilonTooLarge { eps: String, threshold: String },

    #[error("D - eps*I is singular for (k, r) = ({k}, {r}), eps = {eps}")]
    Singular { k: u32, r: u32, eps: String },

    #[error("enumeration of {n}-vertex {k}-graphs is too large: C({n}, {k}) = {subsets} exceeds {limit}")]
    EnumerationTooLarge {
        n: usize,
        k: usize,
        subsets: usize,
        limit: usize,
    },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("cache format error: {0}")]
    Format(String),

    #[error("could not parse rational from {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
