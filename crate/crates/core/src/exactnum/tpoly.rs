use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Scalar;

/// Univariate polynomial in the deformation parameter `t`. Coefficient `k`
/// multiplies `t^k`; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TPoly {
    coeffs: Vec<Scalar>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        TPoly::from_coeffs(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        TPoly::from_coeffs(coeffs)
    }

    pub fn t() -> Self {
        TPoly::monomial(Scalar::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t0: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * t0) + c)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Drops every power above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        TPoly::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn add_assign_mul(&mut self, a: &TPoly, b: &TPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, Scalar::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j].add_mul(x, y);
            }
        }
        *self = TPoly::from_coeffs(std::mem::take(&mut self.coeffs));
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&TPoly> for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub<&TPoly> for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul<&TPoly> for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        out.add_assign_mul(self, rhs);
        out
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}
