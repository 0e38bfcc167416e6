use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("missing data: {0}")]
    DataMissing(String),
    #[error("malformed data: {0}")]
    Data(String),
    #[error("cap of {cap} exceeded after {partial} items")]
    Resource { cap: usize, partial: usize },
    #[error("infeasible class: {0}")]
    Infeasible(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
