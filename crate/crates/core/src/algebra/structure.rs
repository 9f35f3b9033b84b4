use crate::exactnum::Scalar;
use crate::linalg::{Matrix, Vector};

use super::{AlgebraError, Subspace};

/// A finite-dimensional algebra with bracket `[eᵢ,eⱼ] = Σₖ C[i][j][k]·eₖ`.
///
/// Indices are 0-based internally; everything user-facing (files, reports,
/// CLI) is 1-based. Nothing about the Leibniz identity is assumed here.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Algebra {
    name: Option<String>,
    dim: usize,
    structure: Vec<Scalar>,
}

impl Algebra {
    pub fn abelian(dim: usize) -> Self {
        Algebra { name: None, dim, structure: vec![Scalar::zero(); dim * dim * dim] }
    }

    /// Builds from 1-based `(i, j, [(k, c)])` triples. Repeated pairs are rejected.
    pub fn from_brackets<I>(dim: usize, brackets: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
    {
        let mut a = Algebra::abelian(dim);
        let mut seen = std::collections::HashSet::new();
        for (i, j, out) in brackets {
            for idx in [i, j] {
                if idx == 0 || idx > dim {
                    return Err(AlgebraError::Index { index: idx, dim });
                }
            }
            if !seen.insert((i, j)) {
                return Err(AlgebraError::DuplicateBracket(i, j));
            }
            for (k, c) in out {
                if k == 0 || k > dim {
                    return Err(AlgebraError::Index { index: k, dim });
                }
                *a.constant_mut(i - 1, j - 1, k - 1) += &c;
            }
        }
        Ok(a)
    }

    /// Lie algebra from the brackets `[eᵢ,eⱼ]` with `i < j`; the opposite
    /// orientation is filled in with the negated constants.
    pub fn lie_from_brackets<I>(dim: usize, brackets: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
    {
        let mut full = Vec::new();
        for (i, j, out) in brackets {
            let neg = out.iter().map(|(k, c)| (*k, -c)).collect();
            full.push((i, j, out));
            full.push((j, i, neg));
        }
        Algebra::from_brackets(dim, full)
    }

    pub fn from_structure(dim: usize, structure: Vec<Scalar>) -> Self {
        assert_eq!(structure.len(), dim * dim * dim, "structure tensor size");
        Algebra { name: None, dim, structure }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &[Scalar] {
        &self.structure
    }

    /// `C[i][j][k]`, 0-based.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn constant_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Scalar {
        &mut self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `[eᵢ,eⱼ]`, 0-based.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.structure[start..start + self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(AlgebraError::Dimension { expected: self.dim, got: v.len() });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let row = self.basis_bracket(i, j);
                if row.iter().all(Scalar::is_zero) {
                    continue;
                }
                let c = xi * yj;
                for (o, r) in out.iter_mut().zip(row) {
                    o.add_mul(&c, r);
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(Scalar::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (i..n).all(|j| (0..n).all(|k| (self.constant(i, j, k) + self.constant(j, i, k)).is_zero()))
        })
    }

    /// Block sum: `a` on the first `a.dim` basis vectors, `b` on the rest.
    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim, other.dim);
        let mut out = Algebra::abelian(n + m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    *out.constant_mut(i, j, k) = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    *out.constant_mut(n + i, n + j, n + k) = other.constant(i, j, k).clone();
                }
            }
        }
        if let (Some(a), Some(b)) = (self.name(), other.name()) {
            out.name = Some(format!("{a}+{b}"));
        }
        out
    }

    /// Structure constants in the basis whose `i`-th vector has old
    /// coordinates given by row `i` of `p` (`e'ᵢ = Σⱼ p[i][j]·eⱼ`).
    pub fn transport(&self, p: &Matrix) -> Result<Algebra, AlgebraError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(AlgebraError::Dimension { expected: n, got: p.rows().max(p.cols()) });
        }
        // old coordinates v = pᵀ·y, so new coordinates y = (pᵀ)⁻¹·v
        let back = p.transpose().inverse().map_err(|_| AlgebraError::SingularBasisChange)?;
        let rows = p.to_rows();
        let mut out = Algebra::abelian(n);
        for i in 0..n {
            for j in 0..n {
                let v = self.bracket_unchecked(&rows[i], &rows[j]);
                if v.iter().all(Scalar::is_zero) {
                    continue;
                }
                let y = back.mul_vec(&v)?;
                for (k, c) in y.into_iter().enumerate() {
                    *out.constant_mut(i, j, k) = c;
                }
            }
        }
        out.name = self.name.clone();
        Ok(out)
    }

    /// `transport(self, p)` equals `dst` entry-wise.
    pub fn is_isomorphic_via(&self, dst: &Algebra, p: &Matrix) -> Result<bool, AlgebraError> {
        if self.dim != dst.dim {
            return Ok(false);
        }
        Ok(self.transport(p)?.structure == dst.structure)
    }

    /// Pairs `(i, j)` (1-based) where `self` and `other` have different brackets.
    pub fn differing_pairs(&self, other: &Algebra) -> Vec<(usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.basis_bracket(i, j) != other.basis_bracket(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// `{ x : [x,L] = [L,x] = 0 }`
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.constant(i, j, k).clone()).collect());
                rows.push((0..n).map(|i| self.constant(j, i, k).clone()).collect());
            }
        }
        let basis = if rows.is_empty() {
            Vec::new()
        } else {
            Matrix::from_rows(rows).expect("rectangular").nullspace()
        };
        Subspace::from_spanning(n, basis)
    }

    /// Span of all squares `[x,x]`.
    pub fn leibniz_kernel(&self) -> Subspace {
        let n = self.dim;
        let mut gens = Vec::new();
        for i in 0..n {
            gens.push(self.basis_bracket(i, i).to_vec());
            for j in i + 1..n {
                gens.push(
                    self.basis_bracket(i, j).iter().zip(self.basis_bracket(j, i)).map(|(a, b)| a + b).collect(),
                );
            }
        }
        Subspace::from_spanning(n, gens)
    }

    /// `[L,L]`
    pub fn derived_algebra(&self) -> Subspace {
        let n = self.dim;
        Subspace::from_spanning(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.basis_bracket(i, j).to_vec()))
    }

    /// Replaces every structure constant by `f(constant)`.
    pub fn map_constants(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Algebra {
        Algebra { name: self.name.clone(), dim: self.dim, structure: self.structure.iter().map(&mut f).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu1() -> Algebra {
        Algebra::from_brackets(2, [(1, 1, vec![(2, Scalar::one())])]).unwrap()
    }

    fn sl2() -> Algebra {
        Algebra::lie_from_brackets(
            3,
            [
                (1, 2, vec![(3, Scalar::one())]),
                (2, 3, vec![(2, Scalar::from_int(2))]),
                (1, 3, vec![(1, Scalar::from_int(-2))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn mu1_square() {
        let a = mu1();
        let e1 = a.basis_vector(0);
        assert_eq!(a.bracket(&e1, &e1).unwrap(), a.basis_vector(1));
    }

    #[test]
    fn bracket_with_zero() {
        let a = sl2();
        let zero = vec![Scalar::zero(); 3];
        let y = vec![Scalar::one(), Scalar::i(), Scalar::from_int(5)];
        assert_eq!(a.bracket(&zero, &y).unwrap(), zero);
    }

    #[test]
    fn sl2_e1_e2() {
        let a = sl2();
        assert_eq!(a.bracket(&a.basis_vector(0), &a.basis_vector(1)).unwrap(), a.basis_vector(2));
        assert_eq!(a.bracket(&a.basis_vector(1), &a.basis_vector(0)).unwrap(), vec![Scalar::zero(), Scalar::zero(), -Scalar::one()]);
    }

    #[test]
    fn bracket_dimension_mismatch() {
        assert!(matches!(
            mu1().bracket(&[Scalar::one()], &[Scalar::one(), Scalar::zero()]),
            Err(AlgebraError::Dimension { .. })
        ));
    }

    #[test]
    fn duplicate_and_out_of_range() {
        assert_eq!(
            Algebra::from_brackets(2, [(1, 1, vec![]), (1, 1, vec![])]).unwrap_err(),
            AlgebraError::DuplicateBracket(1, 1)
        );
        assert!(matches!(Algebra::from_brackets(2, [(3, 1, vec![])]), Err(AlgebraError::Index { .. })));
    }

    #[test]
    fn mu1_plus_line_is_lambda2_after_swap() {
        let sum = mu1().direct_sum(&Algebra::abelian(1));
        let lambda2 = Algebra::from_brackets(3, [(1, 1, vec![(3, Scalar::one())])]).unwrap();
        let swap = Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert!(sum.is_isomorphic_via(&lambda2, &swap).unwrap());
    }

    #[test]
    fn sum_with_zero_dim() {
        let a = sl2();
        assert_eq!(a.direct_sum(&Algebra::abelian(0)).structure(), a.structure());
    }

    #[test]
    fn identity_transport() {
        let a = sl2();
        assert!(a.is_isomorphic_via(&a, &Matrix::identity(3)).unwrap());
    }

    #[test]
    fn singular_transport() {
        let p = Matrix::from_ints(&[&[1, 0], &[2, 0]]);
        assert_eq!(mu1().transport(&p).unwrap_err(), AlgebraError::SingularBasisChange);
    }

    #[test]
    fn kernels() {
        assert_eq!(sl2().leibniz_kernel().dim(), 0);
        let k = mu1().leibniz_kernel();
        assert_eq!(k.basis(), &[vec![Scalar::zero(), Scalar::one()]]);
    }
}
