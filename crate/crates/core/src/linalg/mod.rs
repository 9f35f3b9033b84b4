//! Dense exact linear algebra over [`Scalar`].

mod family;
mod matrix;

pub use family::det_of_family;
pub use matrix::{Matrix, Vector};
pub(crate) use matrix::rref_in_place as rref_rows;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}
