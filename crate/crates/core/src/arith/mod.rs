//! Exact scalars over ℚ or `F_p`, and dense matrices over them.

mod matrix;
mod scalar;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar};


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not a usable prime modulus")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    SingularMatrix,
}
