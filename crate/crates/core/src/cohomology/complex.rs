use serde::Serialize;

use super::cochain::{tuple_at, tuple_count, tuple_index};
use super::{Cochain, CohomologyError};
use crate::algebra::{Algebra, Side};
use crate::exactnum::Scalar;
use crate::linalg::{Matrix, Vector};
use crate::linalg::rref_rows;

fn require_right(a: &Algebra) -> Result<(), CohomologyError> {
    let report = a.check_identity(Side::Right);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(CohomologyError::NotRightLeibniz(v.indices[0], v.indices[1], v.indices[2])),
    }
}

fn sign(e: usize) -> Scalar {
    if e % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Calls `emit(row_tuple, k, col_tuple, m, coeff)` for every elementary
/// contribution of δᵖ, i.e. `coeff` times the `m`-component of
/// `f(col_tuple)` lands in the `k`-component of `δf(row_tuple)`.
fn for_each_term(a: &Algebra, p: usize, mut emit: impl FnMut(&[usize], usize, &[usize], usize, &Scalar)) {
    let n = a.dim();
    for flat in 0..tuple_count(n, p + 1) {
        let x = tuple_at(n, p + 1, flat);
        // [x₁, f(x₂…)]
        let rest = &x[1..];
        for m in 0..n {
            for k in 0..n {
                let c = a.constant(x[0], m, k);
                if !c.is_zero() {
                    emit(&x, k, rest, m, c);
                }
            }
        }
        // (−1)^i [f(…x̂ᵢ…), xᵢ], 1-based i from 2
        for i in 1..=p {
            let s = sign(i + 1);
            let mut hat = x.clone();
            let xi = hat.remove(i);
            for m in 0..n {
                for k in 0..n {
                    let c = a.constant(m, xi, k);
                    if !c.is_zero() {
                        emit(&x, k, &hat, m, &(&s * c));
                    }
                }
            }
        }
        // (−1)^{j+1} f(…,[xᵢ,xⱼ],…,x̂ⱼ,…)
        for i in 0..=p {
            for j in (i + 1)..=p {
                let s = sign(j);
                for l in 0..n {
                    let c = a.constant(x[i], x[j], l);
                    if c.is_zero() {
                        continue;
                    }
                    let mut y = x.clone();
                    y[i] = l;
                    y.remove(j);
                    let coeff = &s * c;
                    for m in 0..n {
                        emit(&x, m, &y, m, &coeff);
                    }
                }
            }
        }
    }
}

/// Matrix of δᵖ: `CLᵖ → CL^{p+1}` in the row-major cochain bases.
pub fn coboundary_matrix(a: &Algebra, p: usize) -> Result<Matrix, CohomologyError> {
    require_right(a)?;
    Ok(coboundary_matrix_unchecked(a, p))
}

pub(crate) fn coboundary_matrix_unchecked(a: &Algebra, p: usize) -> Matrix {
    let n = a.dim();
    let mut m = Matrix::zeros(tuple_count(n, p + 1) * n, tuple_count(n, p) * n);
    for_each_term(a, p, |row, k, col, mm, c| {
        let r = tuple_index(n, row) * n + k;
        let cc = tuple_index(n, col) * n + mm;
        *m.get_mut(r, cc) += c;
    });
    m
}

/// δf without materialising the matrix.
pub fn coboundary(a: &Algebra, f: &Cochain) -> Result<Cochain, CohomologyError> {
    require_right(a)?;
    if f.dim() != a.dim() {
        return Err(CohomologyError::Dimension { expected: a.dim(), got: f.dim() });
    }
    Ok(coboundary_unchecked(a, f))
}

pub(crate) fn coboundary_unchecked(a: &Algebra, f: &Cochain) -> Cochain {
    let n = a.dim();
    let mut out = Cochain::zero(f.arity() + 1, n);
    for_each_term(a, f.arity(), |row, k, col, m, c| {
        let v = &f.value(col)[m];
        if !v.is_zero() {
            out.value_mut(row)[k].add_mul(c, v);
        }
    });
    out
}

pub fn is_cocycle(a: &Algebra, f: &Cochain) -> Result<bool, CohomologyError> {
    Ok(coboundary(a, f)?.is_zero())
}

/// Image of δ^{p−1} in reduced echelon form, used to reduce cocycles.
#[derive(Clone, Debug)]
pub struct CoboundarySpace {
    degree: usize,
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl CoboundarySpace {
    pub fn new(a: &Algebra, degree: usize) -> Result<Self, CohomologyError> {
        if degree == 0 {
            return Err(CohomologyError::DegreeZero);
        }
        let d = coboundary_matrix(a, degree - 1)?;
        let mut rows = d.transpose().to_rows();
        let pivots = rref_rows(&mut rows, d.rows());
        rows.truncate(pivots.len());
        Ok(CoboundarySpace { degree, dim: a.dim(), rows, pivots })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Clears every pivot coordinate of the image; the result depends only
    /// on the class of `v` modulo the image.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_dim(&self) -> usize {
        self.dim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub dim_hl: usize,
    pub degree: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub representatives: Vec<Cochain>,
}

/// `HLᵖ` with canonical representatives: the cocycle basis is reduced
/// modulo the coboundaries and the result brought to echelon form.
pub fn cohomology(a: &Algebra, p: usize) -> Result<CohomologyReport, CohomologyError> {
    cohomology_with_space(a, p).map(|(r, _)| r)
}

pub fn cohomology_with_space(a: &Algebra, p: usize) -> Result<(CohomologyReport, CoboundarySpace), CohomologyError> {
    let space = CoboundarySpace::new(a, p)?;
    let d = coboundary_matrix_unchecked(a, p);
    let cocycles = d.nullspace();
    let dim_cocycles = cocycles.len();
    let mut reduced: Vec<Vector> = cocycles
        .into_iter()
        .map(|mut v| {
            space.reduce(&mut v);
            v
        })
        .collect();
    let cols = d.cols();
    let pivots = rref_rows(&mut reduced, cols);
    reduced.truncate(pivots.len());
    let representatives = reduced
        .into_iter()
        .map(|v| Cochain::from_vector(p, a.dim(), v).expect("shape"))
        .collect::<Vec<_>>();
    let report = CohomologyReport {
        dim_hl: representatives.len(),
        degree: p,
        dim_cocycles,
        dim_coboundaries: space.dim(),
        representatives,
    };
    Ok((report, space))
}

/// Canonical representative of the class of a cocycle.
pub fn reduce_mod_coboundaries(a: &Algebra, f: &Cochain) -> Result<Cochain, CohomologyError> {
    if f.arity() == 0 {
        return Err(CohomologyError::DegreeZero);
    }
    if !is_cocycle(a, f)? {
        return Err(CohomologyError::NotCocycle);
    }
    let space = CoboundarySpace::new(a, f.arity())?;
    let mut v = f.as_slice().to_vec();
    space.reduce(&mut v);
    Cochain::from_vector(f.arity(), f.dim(), v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn lambda2() -> Algebra {
        Algebra::from_brackets(3, [(1, 1, vec![(3, s(1))])]).unwrap()
    }

    fn mu1() -> Algebra {
        Algebra::from_brackets(2, [(1, 1, vec![(2, s(1))])]).unwrap()
    }

    fn sl2() -> Algebra {
        Algebra::lie_from_brackets(
            3,
            [(1, 2, vec![(3, s(1))]), (2, 3, vec![(2, s(2))]), (1, 3, vec![(1, s(-2))])],
        )
        .unwrap()
    }

    #[test]
    fn abelian_coboundary_is_zero() {
        for p in 0..3 {
            assert!(coboundary_matrix(&Algebra::abelian(2), p).unwrap().is_zero());
        }
    }

    #[test]
    fn shapes() {
        let d = coboundary_matrix(&lambda2(), 1).unwrap();
        assert_eq!((d.rows(), d.cols()), (27, 9));
        let d = coboundary_matrix(&lambda2(), 2).unwrap();
        assert_eq!((d.rows(), d.cols()), (81, 27));
    }

    #[test]
    fn delta1_by_hand() {
        // δg(x,y) = [x,g(y)] + [g(x),y] − g([x,y]) with g = id on λ₂
        let g = Cochain::from_entries(1, 3, (1..=3).map(|i| (vec![i], vec![(i, s(1))]))).unwrap();
        let dg = coboundary(&lambda2(), &g).unwrap();
        // [e1,e1] + [e1,e1] − [e1,e1] = e3
        assert_eq!(dg.value(&[0, 0]), &[s(0), s(0), s(1)]);
        assert!(dg.value(&[0, 1]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn matrix_agrees_with_direct_application() {
        let a = sl2();
        let d = coboundary_matrix(&a, 2).unwrap();
        let f = Cochain::from_entries(
            2,
            3,
            [(vec![1, 2], vec![(3, s(2)), (1, Scalar::i())]), (vec![3, 1], vec![(2, s(-1))])],
        )
        .unwrap();
        let direct = coboundary(&a, &f).unwrap();
        assert_eq!(d.mul_vec(f.as_slice()).unwrap(), direct.as_slice());
    }

    #[test]
    fn square_is_zero() {
        for a in [lambda2(), sl2(), mu1()] {
            for p in 0..2 {
                let d0 = coboundary_matrix(&a, p).unwrap();
                let d1 = coboundary_matrix(&a, p + 1).unwrap();
                assert!(d1.mul(&d0).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rejects_non_leibniz() {
        // [e1,e1]=e2, [e1,e2]=e1 fails the right identity
        let bad = Algebra::from_brackets(2, [(1, 1, vec![(2, s(1))]), (1, 2, vec![(1, s(1))])]).unwrap();
        assert!(!bad.is_right_leibniz());
        assert!(matches!(coboundary_matrix(&bad, 1), Err(CohomologyError::NotRightLeibniz(..))));
    }

    #[test]
    fn known_dimensions() {
        assert_eq!(cohomology(&lambda2(), 2).unwrap().dim_hl, 8);
        assert_eq!(cohomology(&sl2(), 2).unwrap().dim_hl, 0);
        let r = cohomology(&Algebra::abelian(1), 2).unwrap();
        assert_eq!((r.dim_cocycles, r.dim_coboundaries, r.dim_hl), (1, 0, 1));
        let r = cohomology(&mu1(), 2).unwrap();
        assert_eq!((r.dim_cocycles, r.dim_coboundaries, r.dim_hl), (3, 2, 1));
        assert!(matches!(cohomology(&mu1(), 0), Err(CohomologyError::DegreeZero)));
    }

    #[test]
    fn representatives_are_cocycles() {
        let a = lambda2();
        let r = cohomology(&a, 2).unwrap();
        for f in &r.representatives {
            assert!(is_cocycle(&a, f).unwrap());
            assert_eq!(&reduce_mod_coboundaries(&a, f).unwrap(), f);
        }
    }

    #[test]
    fn lambda2_cocycles() {
        let a = lambda2();
        let phi4 = Cochain::from_entries(2, 3, [(vec![2, 1], vec![(3, s(1))])]).unwrap();
        assert!(is_cocycle(&a, &phi4).unwrap());
        let red = reduce_mod_coboundaries(&a, &phi4).unwrap();
        assert!(!red.is_zero());
        let g = Cochain::from_entries(2, 3, [(vec![2, 2], vec![(1, s(1))])]).unwrap();
        assert!(!is_cocycle(&a, &g).unwrap());
        assert_eq!(reduce_mod_coboundaries(&a, &g), Err(CohomologyError::NotCocycle));
        assert!(is_cocycle(&a, &Cochain::zero(2, 3)).unwrap());
    }

    #[test]
    fn coboundaries_reduce_to_zero() {
        let a = lambda2();
        let g = Cochain::from_entries(1, 3, [(vec![1], vec![(2, s(1))]), (vec![3], vec![(1, s(5))])]).unwrap();
        let dg = coboundary(&a, &g).unwrap();
        assert!(!dg.is_zero());
        assert!(reduce_mod_coboundaries(&a, &dg).unwrap().is_zero());
    }

    #[test]
    fn mu1_listed_cocycles() {
        // the cocycle giving λ₂-type deformations, and the left-handed one
        let a = mu1();
        let f = Cochain::from_entries(2, 2, [(vec![1, 2], vec![(2, s(1))])]).unwrap();
        let g = Cochain::from_entries(2, 2, [(vec![2, 1], vec![(2, s(1))])]).unwrap();
        assert!(is_cocycle(&a, &g).unwrap());
        assert!(!is_cocycle(&a, &f).unwrap());
    }
}
