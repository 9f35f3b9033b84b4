use serde::Serialize;

use super::DeformationError;
use crate::algebra::{Algebra, Side};
use crate::cohomology::{is_cocycle, Cochain};
use crate::exactnum::{Scalar, TPoly};
use crate::forms::{is_metric, MetricVerdict};

/// An algebra whose structure constants are polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyAlgebra {
    dim: usize,
    structure: Vec<TPoly>,
}

impl PolyAlgebra {
    pub fn constant(a: &Algebra) -> Self {
        PolyAlgebra { dim: a.dim(), structure: a.structure().iter().cloned().map(TPoly::constant).collect() }
    }

    pub fn from_structure(dim: usize, structure: Vec<TPoly>) -> Result<Self, DeformationError> {
        let expected = dim * dim * dim;
        if structure.len() != expected {
            return Err(DeformationError::Dimension { expected, got: structure.len() });
        }
        Ok(PolyAlgebra { dim, structure })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &[TPoly] {
        &self.structure
    }

    pub fn constant_at(&self, i: usize, j: usize, k: usize) -> &TPoly {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn degree(&self) -> usize {
        self.structure.iter().filter_map(TPoly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, t0: &Scalar) -> Algebra {
        Algebra::from_structure(self.dim, self.structure.iter().map(|p| p.eval(t0)).collect())
    }

    /// The `t = 0` algebra.
    pub fn base(&self) -> Algebra {
        self.eval(&Scalar::zero())
    }

    /// `μ_t(eᵢ, v)` for a vector with polynomial coordinates.
    pub(crate) fn bracket_left(&self, i: usize, v: &[TPoly]) -> Vec<TPoly> {
        let n = self.dim;
        let mut out = vec![TPoly::zero(); n];
        for (m, vm) in v.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (k, slot) in out.iter_mut().enumerate() {
                slot.add_assign_mul(vm, self.constant_at(i, m, k));
            }
        }
        out
    }

    /// `μ_t(v, eⱼ)`.
    pub(crate) fn bracket_right(&self, v: &[TPoly], j: usize) -> Vec<TPoly> {
        let n = self.dim;
        let mut out = vec![TPoly::zero(); n];
        for (m, vm) in v.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (k, slot) in out.iter_mut().enumerate() {
                slot.add_assign_mul(vm, self.constant_at(m, j, k));
            }
        }
        out
    }

    pub(crate) fn basis_bracket(&self, i: usize, j: usize) -> &[TPoly] {
        let start = (i * self.dim + j) * self.dim;
        &self.structure[start..start + self.dim]
    }
}

/// `μ₀ + Σ t^{powerᵢ}·φᵢ`.
pub fn deform(a: &Algebra, parts: &[(Cochain, usize)]) -> Result<PolyAlgebra, DeformationError> {
    let mut pa = PolyAlgebra::constant(a);
    for (phi, power) in parts {
        if phi.arity() != 2 {
            return Err(DeformationError::Arity(phi.arity()));
        }
        if phi.dim() != a.dim() {
            return Err(DeformationError::Dimension { expected: a.dim(), got: phi.dim() });
        }
        for (slot, c) in pa.structure.iter_mut().zip(phi.as_slice()) {
            if !c.is_zero() {
                *slot = &*slot + &TPoly::monomial(c.clone(), *power);
            }
        }
    }
    Ok(pa)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub dim: usize,
    /// `(i,j,k,l)` row-major: `eₗ`-coefficient of the right residual on `(eᵢ,eⱼ,eₖ)`.
    pub defect: Vec<TPoly>,
    pub obstruction_order: Option<usize>,
}

impl DefectReport {
    pub fn residual(&self, i: usize, j: usize, k: usize) -> &[TPoly] {
        let n = self.dim;
        let start = ((i * n + j) * n + k) * n;
        &self.defect[start..start + n]
    }

    /// 1-based triples with a nonzero `t^order` coefficient, with that coefficient.
    pub fn coefficient(&self, order: usize) -> Vec<([usize; 3], Vec<Scalar>)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v: Vec<Scalar> = self.residual(i, j, k).iter().map(|p| p.coeff(order)).collect();
                    if v.iter().any(|c| !c.is_zero()) {
                        out.push(([i + 1, j + 1, k + 1], v));
                    }
                }
            }
        }
        out
    }

    pub fn is_deformation(&self) -> bool {
        self.obstruction_order.is_none()
    }
}

/// Right-Leibniz residual of `μ_t` as exact polynomials in `t`.
pub fn leibniz_defect(pa: &PolyAlgebra) -> Result<DefectReport, DeformationError> {
    defect_with(pa, Side::Right)
}

/// The same with the left residual `μ(x,μ(y,z)) − μ(μ(x,y),z) − μ(y,μ(x,z))`.
pub fn left_leibniz_defect(pa: &PolyAlgebra) -> Result<DefectReport, DeformationError> {
    defect_with(pa, Side::Left)
}

fn defect_with(pa: &PolyAlgebra, side: Side) -> Result<DefectReport, DeformationError> {
    let base = pa.base().check_identity(side);
    if let Some(v) = base.violations.first() {
        return Err(DeformationError::InvalidBase(v.indices[0], v.indices[1], v.indices[2]));
    }
    let n = pa.dim;
    let mut defect = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = pa.bracket_left(i, pa.basis_bracket(j, k));
                let b = pa.bracket_right(pa.basis_bracket(i, j), k);
                if side == Side::Left {
                    let c = pa.bracket_left(j, pa.basis_bracket(i, k));
                    defect.extend((0..n).map(|l| &(&a[l] - &b[l]) - &c[l]));
                } else {
                    let c = pa.bracket_right(pa.basis_bracket(i, k), j);
                    defect.extend((0..n).map(|l| &(&a[l] - &b[l]) + &c[l]));
                }
            }
        }
    }
    let obstruction_order = defect.iter().filter_map(TPoly::valuation).min();
    Ok(DefectReport { dim: n, defect, obstruction_order })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ObstructionRule {
    /// The cochain is a cocycle and the family is obstructed at `t²`.
    Confirmed { index: usize, residual: Vec<([usize; 3], Vec<Scalar>)> },
    /// Precondition failed: the cochain is not a cocycle.
    NotCocycle { index: usize },
    Contradicted { index: usize, obstruction_order: Option<usize> },
}

impl ObstructionRule {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, ObstructionRule::Confirmed { .. })
    }
}

/// Checks that `φ(eᵢ,eᵢ) = eᵢ` (1-based `i`) only works infinitesimally.
pub fn infinitesimal_obstruction_rule(a: &Algebra, i: usize) -> Result<ObstructionRule, DeformationError> {
    let n = a.dim();
    if i == 0 || i > n {
        return Err(DeformationError::Index { index: i, dim: n });
    }
    let phi = Cochain::from_entries(2, n, [(vec![i, i], vec![(i, Scalar::one())])])?;
    if !is_cocycle(a, &phi)? {
        return Ok(ObstructionRule::NotCocycle { index: i });
    }
    let report = leibniz_defect(&deform(a, &[(phi, 1)])?)?;
    Ok(match report.obstruction_order {
        Some(2) => ObstructionRule::Confirmed { index: i, residual: report.coefficient(2) },
        other => ObstructionRule::Contradicted { index: i, obstruction_order: other },
    })
}

/// Metric decision for the member of an honest family at `t = t0`.
pub fn metric_of_deformation(pa: &PolyAlgebra, t0: &Scalar) -> Result<MetricVerdict, DeformationError> {
    if t0.is_zero() {
        return Err(DeformationError::ZeroParameter);
    }
    if let Some(order) = leibniz_defect(pa)?.obstruction_order {
        return Err(DeformationError::Obstructed(order));
    }
    Ok(is_metric(&pa.eval(t0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn diamond() -> Algebra {
        Algebra::lie_from_brackets(
            4,
            [(1, 2, vec![(3, s(1))]), (1, 3, vec![(2, s(-1))]), (2, 3, vec![(4, s(1))])],
        )
        .unwrap()
    }

    #[test]
    fn empty_parts_give_base() {
        let a = diamond();
        let pa = deform(&a, &[]).unwrap();
        assert_eq!(pa.degree(), 0);
        assert_eq!(pa.base(), a);
        assert!(leibniz_defect(&pa).unwrap().is_deformation());
    }

    #[test]
    fn diamond_phi1_is_honest() {
        let a = diamond();
        let phi = Cochain::from_entries(2, 4, [(vec![1, 1], vec![(4, s(1))])]).unwrap();
        let pa = deform(&a, &[(phi, 1)]).unwrap();
        assert_eq!(pa.degree(), 1);
        assert_eq!(leibniz_defect(&pa).unwrap().obstruction_order, None);
    }

    #[test]
    fn diamond_plus_c_square_is_obstructed() {
        let a = diamond().direct_sum(&Algebra::abelian(1));
        let phi = Cochain::from_entries(2, 5, [(vec![5, 5], vec![(5, s(1))])]).unwrap();
        let r = leibniz_defect(&deform(&a, &[(phi, 1)]).unwrap()).unwrap();
        assert_eq!(r.obstruction_order, Some(2));
        let c = r.coefficient(2);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, [5, 5, 5]);
        assert_eq!(c[0].1, vec![s(0), s(0), s(0), s(0), s(1)]);
        let pa = deform(&a, &[(Cochain::from_entries(2, 5, [(vec![5, 5], vec![(5, s(1))])]).unwrap(), 1)]).unwrap();
        let left = left_leibniz_defect(&pa).unwrap();
        assert_eq!(left.obstruction_order, Some(2));
        assert_eq!(left.coefficient(2)[0].1, vec![s(0), s(0), s(0), s(0), s(-1)]);
    }

    #[test]
    fn obstruction_rule_on_lambda2() {
        let a = Algebra::from_brackets(3, [(1, 1, vec![(3, s(1))])]).unwrap();
        assert!(infinitesimal_obstruction_rule(&a, 2).unwrap().is_confirmed());
        assert_eq!(
            infinitesimal_obstruction_rule(&a, 1).unwrap(),
            ObstructionRule::NotCocycle { index: 1 }
        );
        assert!(infinitesimal_obstruction_rule(&a, 4).is_err());
    }

    #[test]
    fn metric_of_deformation_checks() {
        let a = diamond();
        let phi = Cochain::from_entries(2, 4, [(vec![2, 3], vec![(1, s(1))]), (vec![3, 2], vec![(1, s(-1))])]).unwrap();
        let pa = deform(&a, &[(phi.clone(), 1)]).unwrap();
        assert!(metric_of_deformation(&pa, &s(1)).unwrap().metric);
        assert_eq!(metric_of_deformation(&pa, &s(0)), Err(DeformationError::ZeroParameter));
        let sq = Cochain::from_entries(2, 4, [(vec![4, 4], vec![(4, s(1))])]).unwrap();
        let bad = deform(&a, &[(sq, 1)]).unwrap();
        assert!(matches!(metric_of_deformation(&bad, &s(1)), Err(DeformationError::Obstructed(_))));
        let trivial = deform(&a, &[(Cochain::zero(2, 4), 1)]).unwrap();
        assert_eq!(metric_of_deformation(&trivial, &s(3)).unwrap().metric, is_metric(&a).metric);
    }

    #[test]
    fn rejects_bad_parts() {
        let a = diamond();
        assert_eq!(deform(&a, &[(Cochain::zero(1, 4), 1)]), Err(DeformationError::Arity(1)));
        assert!(matches!(deform(&a, &[(Cochain::zero(2, 3), 1)]), Err(DeformationError::Dimension { .. })));
    }
}
