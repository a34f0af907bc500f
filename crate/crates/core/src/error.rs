use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("flip prefix length {prefix} exceeds string length {len}")]
    PrefixTooLong { prefix: usize, len: usize },

    #[error("flip prefix length must be at least 1")]
    EmptyFlip,

    #[error("invalid string {0:?}: expected a sequence of decimal digits")]
    Parse(String),

    #[error("string is not normalized: equal adjacent symbols at position {0}")]
    NotNormalized(usize),

    #[error("string is not fully ternary")]
    NotFullyTernary,

    #[error("string is not binary")]
    NotBinary,

    #[error("no closed form or exact solver for arity {0}")]
    UnsupportedArity(usize),

    #[error("strings are not compatible (symbol frequencies differ)")]
    Incompatible,

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("epsilon must be a positive finite number, got {0}")]
    InvalidEpsilon(f64),

    #[error("invalid 3-Partition instance: {0}")]
    InvalidInstance(String),

    #[error("invalid triplet partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
