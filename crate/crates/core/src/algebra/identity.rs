use serde::Serialize;

use super::Algebra;
use crate::exactnum::Scalar;
use crate::linalg::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Symmetric,
    Lie,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Right, Side::Left, Side::Symmetric, Side::Lie];

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Symmetric => "symmetric",
            Side::Lie => "lie",
        }
    }
}

/// One failing basis tuple. `indices` are 1-based; antisymmetry failures
/// carry a pair, the Leibniz identities a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: &'static str,
    pub indices: Vec<usize>,
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub side: Side,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl Algebra {
    /// `[x,[y,z]] − [[x,y],z] + [[x,z],y]` on basis vectors (0-based).
    pub fn right_residual(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim();
        let e = |a: usize| self.basis_vector(a);
        let lhs = self.bracket_unchecked(&e(i), self.basis_bracket(j, k));
        let xy = self.bracket_unchecked(self.basis_bracket(i, j), &e(k));
        let xz = self.bracket_unchecked(self.basis_bracket(i, k), &e(j));
        (0..n).map(|m| &(&lhs[m] - &xy[m]) + &xz[m]).collect()
    }

    /// `[x,[y,z]] − [[x,y],z] − [y,[x,z]]` on basis vectors (0-based).
    pub fn left_residual(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim();
        let e = |a: usize| self.basis_vector(a);
        let lhs = self.bracket_unchecked(&e(i), self.basis_bracket(j, k));
        let xy = self.bracket_unchecked(self.basis_bracket(i, j), &e(k));
        let yxz = self.bracket_unchecked(&e(j), self.basis_bracket(i, k));
        (0..n).map(|m| &(&lhs[m] - &xy[m]) - &yxz[m]).collect()
    }

    fn triple_violations(&self, identity: &'static str, residual: impl Fn(usize, usize, usize) -> Vector) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = residual(i, j, k);
                    if r.iter().any(|x| !x.is_zero()) {
                        out.push(Violation { identity, indices: vec![i + 1, j + 1, k + 1], residual: r });
                    }
                }
            }
        }
        out
    }

    fn antisymmetry_violations(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let r: Vector = self.basis_bracket(i, j).iter().zip(self.basis_bracket(j, i)).map(|(a, b)| a + b).collect();
                if r.iter().any(|x| !x.is_zero()) {
                    out.push(Violation { identity: "antisymmetry", indices: vec![i + 1, j + 1], residual: r });
                }
            }
        }
        out
    }

    /// Checks the chosen identity on every basis triple.
    pub fn check_identity(&self, side: Side) -> IdentityReport {
        let right = || self.triple_violations("right", |i, j, k| self.right_residual(i, j, k));
        let left = || self.triple_violations("left", |i, j, k| self.left_residual(i, j, k));
        let violations = match side {
            Side::Right => right(),
            Side::Left => left(),
            Side::Symmetric => {
                let mut v = right();
                v.extend(left());
                v
            }
            Side::Lie => {
                let mut v = self.antisymmetry_violations();
                v.extend(right());
                v
            }
        };
        IdentityReport { side, holds: violations.is_empty(), violations }
    }

    pub fn is_right_leibniz(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.right_residual(i, j, k).iter().all(Scalar::is_zero))))
    }
}
