//! Exact computations with finite-dimensional (metric) Leibniz algebras:
//! identities, invariant forms, Leibniz cohomology with adjoint
//! coefficients, one-parameter deformations and their obstructions.
//!
//! All arithmetic is over the Gaussian rationals ℚ(i); equality is exact.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod deformation;
pub mod exactnum;
pub mod forms;
pub mod linalg;

pub use algebra::{Algebra, Side, SeriesKind, Subspace};
pub use exactnum::{Scalar, TPoly};
pub use linalg::{Matrix, Vector};
