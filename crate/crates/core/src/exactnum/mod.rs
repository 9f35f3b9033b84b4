//! Exact scalars over the Gaussian rationals, plus polynomial rings on top of them.

mod modp;
mod multipoly;
mod scalar;
mod tpoly;

pub use modp::{ModP, MODULUS};
pub use multipoly::{Monomial, MultiPoly};
pub use scalar::{parse_rational, format_rational, Rational, Scalar};
pub use tpoly::TPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("rational {0:?} is not in reduced form")]
    NotReduced(String),
}
