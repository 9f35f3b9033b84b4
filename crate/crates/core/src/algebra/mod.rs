//! Leibniz algebras given by structure constants.

mod identity;
mod io;
mod series;
mod structure;
mod subspace;

pub use identity::{IdentityReport, Side, Violation};
pub use io::{AlgebraFile, BracketEntry, OutTerm};
pub use series::{SeriesKind, SeriesReport};
pub use structure::Algebra;
pub use subspace::Subspace;

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("basis index {index} out of range 1..={dim}")]
    Index { index: usize, dim: usize },
    #[error("duplicate bracket [e{0},e{1}]")]
    DuplicateBracket(usize, usize),
    #[error("basis change is singular")]
    SingularBasisChange,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
