use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("weight mismatch: |{left}| = {left_weight} but |{right}| = {right_weight}")]
    WeightMismatch {
        left: String,
        left_weight: u32,
        right: String,
        right_weight: u32,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a symmetric polynomial in the requested variable: {0}")]
    NotSymmetric(String),
    #[error("no pole decomposition at t_{k}: {reason}")]
    NoSuchDecomposition { k: u32, reason: String },
    #[error("missing free-energy coefficient at degree {0:?}")]
    MissingCoefficient(Vec<u32>),
    #[error("graph error: {0}")]
    Graph(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
