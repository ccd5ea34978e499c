//! Error type shared across the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("element has support at index {index} but must be supported strictly below {bound}")]
    SupportViolation { index: usize, bound: usize },

    #[error("element is not homogeneous; weights present: {weights:?}")]
    Inhomogeneous { weights: Vec<Vec<i64>> },

    #[error("the zero element carries no weight")]
    ZeroWeight,

    #[error("malformed presentation: {0}")]
    BadPresentation(String),

    #[error("presentation is not a quantum nilpotent algebra: {0}")]
    NotQna(String),

    #[error("prime element recursion: {0}")]
    ClusterConstruction(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("operation refused: {0}")]
    Refused(String),

    #[error("weight {0:?} is not an integer combination of the free weight basis")]
    WeightOutsideBasis(Vec<i64>),

    #[error("malformed input: {0}")]
    Parse(String),
}
