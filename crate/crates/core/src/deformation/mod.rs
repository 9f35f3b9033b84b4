//! One-parameter deformations `μ_t = μ₀ + t·φ₁ + t²·φ₂ + …`.

mod equivalence;
mod poly;
mod record;
mod scan;

pub use equivalence::{equivalence_check, inverse_series, MatrixSeries};
pub use poly::{
    deform, infinitesimal_obstruction_rule, leibniz_defect, left_leibniz_defect, metric_of_deformation, DefectReport, ObstructionRule,
    PolyAlgebra,
};
pub use record::{DeformationRecord, IsoWitness, ObstructionOrder};
pub use scan::{scan_metric_deformations, GridName, ScanHit, ScanOptions, ScanReport};

use thiserror::Error;

use crate::cohomology::CohomologyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error("base algebra is not right Leibniz: identity fails on (e{0},e{1},e{2})")]
    InvalidBase(usize, usize, usize),
    #[error("deformation cochains must have arity 2, got {0}")]
    Arity(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("the parameter must be instantiated at a nonzero value")]
    ZeroParameter,
    #[error("family is obstructed at order {0}")]
    Obstructed(usize),
    #[error("the leading term of the formal isomorphism must be the identity")]
    NonIdentityLeading,
    #[error("basis index {index} out of range 1..={dim}")]
    Index { index: usize, dim: usize },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}
