//! Leibniz cochain complex with adjoint coefficients.
//!
//! For a right Leibniz algebra the coboundary of a `p`-cochain is
//!
//! ```text
//! δf(x₁,…,x_{p+1}) = [x₁, f(x₂,…,x_{p+1})]
//!                  + Σ_{i≥2} (−1)^i [f(x₁,…,x̂ᵢ,…,x_{p+1}), xᵢ]
//!                  + Σ_{i<j} (−1)^{j+1} f(x₁,…,[xᵢ,xⱼ],…,x̂ⱼ,…,x_{p+1})
//! ```
//!
//! where `[xᵢ,xⱼ]` sits in slot `i`.

mod cochain;
mod complex;

pub use cochain::{Cochain, CochainEntry, CochainFile, CochainTerm};
pub use complex::{
    coboundary, coboundary_matrix, cohomology, cohomology_with_space, is_cocycle, reduce_mod_coboundaries,
    CoboundarySpace, CohomologyReport,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("algebra is not right Leibniz: identity fails on (e{0},e{1},e{2})")]
    NotRightLeibniz(usize, usize, usize),
    #[error("cochain arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("basis index {index} out of range 1..={dim}")]
    Index { index: usize, dim: usize },
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("cohomology is only defined in degree >= 1")]
    DegreeZero,
    #[error("cochain contains the deformation parameter t")]
    LiteralT,
}
