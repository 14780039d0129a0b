use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("block sizes differ: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not contained in the ambient group: {0}")]
    NotContained(String),
    #[error("vector is not invariant: {0}")]
    NotInvariant(String),
    #[error("not a step function for this composition: {0}")]
    NotStep(String),
    #[error("not a valid operad element: {0}")]
    InvalidElement(String),
    #[error("nested element has the wrong shape: {0}")]
    ShapeError(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
