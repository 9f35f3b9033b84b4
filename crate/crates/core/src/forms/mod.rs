//! Invariant symmetric bilinear forms and the metric decision.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::exactnum::{MultiPoly, Scalar};
use crate::linalg::{det_of_family, LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("form is {got}x{got} but the algebra has dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Candidate inner product. Symmetry is checked, never assumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearForm {
    pub dim: usize,
    pub matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self, FormError> {
        if !matrix.is_square() {
            return Err(FormError::Dimension { expected: matrix.rows(), got: matrix.cols() });
        }
        Ok(BilinearForm { dim: matrix.rows(), matrix })
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let b = self.matrix.get(i, j);
                if !b.is_zero() && !yj.is_zero() {
                    acc.add_mul(&(xi * yj), b);
                }
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormReport {
    pub symmetric: bool,
    pub invariant: bool,
    pub nondegenerate: bool,
    /// 1-based triples `(i,j,k)` with `B([eᵢ,eⱼ],eₖ) ≠ B(eᵢ,[eⱼ,eₖ])`.
    pub invariance_violations: Vec<[usize; 3]>,
}

impl FormReport {
    pub fn all(&self) -> bool {
        self.symmetric && self.invariant && self.nondegenerate
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricVerdict {
    pub metric: bool,
    pub witness: Option<BilinearForm>,
    /// Dimension of the space of invariant symmetric forms.
    pub family_dim: usize,
}

/// Witness search order for the family coefficients.
pub fn witness_grid() -> [Scalar; 5] {
    [Scalar::one(), -Scalar::one(), Scalar::from_int(2), Scalar::i(), Scalar::gaussian(1, 1)]
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
}

/// Basis of the symmetric forms with `B([x,y],z) = B(x,[y,z])`, from the
/// nullspace of one linear system in the `n(n+1)/2` upper-triangular entries.
pub fn invariant_form_space(a: &Algebra) -> Vec<BilinearForm> {
    let n = a.dim();
    let pairs = upper_pairs(n);
    let slot = |p: usize, q: usize| {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        pairs.iter().position(|&x| x == (lo, hi)).expect("pair present")
    };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![Scalar::zero(); pairs.len()];
                for m in 0..n {
                    let c = a.constant(i, j, m);
                    if !c.is_zero() {
                        row[slot(m, k)] += c;
                    }
                    let c = a.constant(j, k, m);
                    if !c.is_zero() {
                        row[slot(i, m)] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        Matrix::identity(pairs.len()).to_rows()
    } else {
        Matrix::from_rows(rows).expect("rectangular").nullspace()
    };
    basis
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            for (t, &(p, q)) in pairs.iter().enumerate() {
                m.set(p, q, v[t].clone());
                m.set(q, p, v[t].clone());
            }
            BilinearForm { dim: n, matrix: m }
        })
        .collect()
}

fn combine(family: &[BilinearForm], coeffs: &[Scalar]) -> Matrix {
    let n = family[0].dim;
    let mut m = Matrix::zeros(n, n);
    for (b, c) in family.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for r in 0..n {
            for s in 0..n {
                let x = b.matrix.get(r, s);
                if !x.is_zero() {
                    m.get_mut(r, s).add_mul(x, c);
                }
            }
        }
    }
    m
}

/// Lexicographic walk over `values^m`, first coordinate slowest.
fn lex_points(values: &[Scalar], m: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    let total = (values.len() as u128).checked_pow(m as u32);
    let mut idx = vec![0usize; m];
    let mut done = total == Some(0);
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let point = idx.iter().map(|&k| values[k].clone()).collect();
        done = true;
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < values.len() {
                done = false;
                break;
            }
            *slot = 0;
        }
        Some(point)
    })
}

/// Number of grid points tried directly before falling back to the
/// parametric determinant.
const DIRECT_BUDGET: usize = 64;

/// Decides whether some invariant symmetric form is nondegenerate.
///
/// The decision is `det(Σ λᵢ·Bᵢ) ≢ 0`. A nondegenerate grid point settles it
/// at once; otherwise the determinant polynomial is built, and if nonzero
/// the grid (then growing integer boxes) is walked until a point with a
/// nonzero value turns up, which must happen.
pub fn is_metric(a: &Algebra) -> MetricVerdict {
    let family = invariant_form_space(a);
    let family_dim = family.len();
    if family.is_empty() {
        return MetricVerdict { metric: false, witness: None, family_dim };
    }
    let grid = witness_grid();
    let witness_at = |coeffs: &[Scalar]| {
        let m = combine(&family, coeffs);
        (!m.det().expect("square").is_zero()).then(|| BilinearForm { dim: a.dim(), matrix: m })
    };
    for point in lex_points(&grid, family_dim).take(DIRECT_BUDGET) {
        if let Some(w) = witness_at(&point) {
            return MetricVerdict { metric: true, witness: Some(w), family_dim };
        }
    }
    let det = det_of_family(&family.iter().map(|b| b.matrix.clone()).collect::<Vec<_>>()).expect("square family");
    if det.is_zero() {
        return MetricVerdict { metric: false, witness: None, family_dim };
    }
    let point = find_nonvanishing(&det, &grid, family_dim);
    let witness = witness_at(&point).expect("determinant polynomial is nonzero at this point");
    MetricVerdict { metric: true, witness: Some(witness), family_dim }
}

fn find_nonvanishing(det: &MultiPoly, grid: &[Scalar], m: usize) -> Vec<Scalar> {
    if let Some(p) = lex_points(grid, m).find(|p| !det.eval(p).is_zero()) {
        return p;
    }
    // a box with more points per axis than the total degree cannot be a zero set
    let mut radius = 1i64;
    loop {
        let values: Vec<Scalar> = (-radius..=radius).map(Scalar::from_int).collect();
        if let Some(p) = lex_points(&values, m).find(|p| !det.eval(p).is_zero()) {
            return p;
        }
        radius += 1;
    }
}

/// Exact symmetric / invariant / nondegenerate checks.
pub fn verify_form(a: &Algebra, b: &BilinearForm) -> Result<FormReport, FormError> {
    let n = a.dim();
    if b.dim != n || b.matrix.rows() != n || b.matrix.cols() != n {
        return Err(FormError::Dimension { expected: n, got: b.matrix.rows() });
    }
    let symmetric = b.matrix == b.matrix.transpose();
    let mut invariance_violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = b.eval(a.basis_bracket(i, j), &a.basis_vector(k));
                let rhs = b.eval(&a.basis_vector(i), a.basis_bracket(j, k));
                if lhs != rhs {
                    invariance_violations.push([i + 1, j + 1, k + 1]);
                }
            }
        }
    }
    let nondegenerate = !b.matrix.det()?.is_zero();
    Ok(FormReport { symmetric, invariant: invariance_violations.is_empty(), nondegenerate, invariance_violations })
}
