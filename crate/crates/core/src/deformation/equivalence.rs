use super::{DeformationError, PolyAlgebra};
use crate::exactnum::TPoly;
use crate::linalg::Matrix;

/// `Φ_t = Σ φᵢ tⁱ`, entry `i` holding `φᵢ`. Matrices act on coordinate columns.
pub type MatrixSeries = Vec<Matrix>;

fn check_leading(phi: &[Matrix], n: usize) -> Result<(), DeformationError> {
    match phi.first() {
        Some(m) if *m == Matrix::identity(n) => {}
        _ => return Err(DeformationError::NonIdentityLeading),
    }
    for m in phi {
        if m.rows() != n || m.cols() != n {
            return Err(DeformationError::Dimension { expected: n, got: m.rows() });
        }
    }
    Ok(())
}

/// Coefficients `ψ₀..ψ_order` of `Φ_t⁻¹`, from `ψₖ = −Σ_{i=1..k} φᵢ ψ_{k−i}`.
pub fn inverse_series(phi: &[Matrix], order: usize) -> Result<MatrixSeries, DeformationError> {
    let n = phi.first().map_or(0, Matrix::rows);
    check_leading(phi, n)?;
    let mut psi = vec![Matrix::identity(n)];
    for k in 1..=order {
        let mut acc = Matrix::zeros(n, n);
        for i in 1..=k.min(phi.len() - 1) {
            let term = phi[i].mul(&psi[k - i]).expect("square");
            acc = acc.add(&term.scale(&-crate::exactnum::Scalar::one())).expect("square");
        }
        psi.push(acc);
    }
    Ok(psi)
}

fn poly_entries(series: &[Matrix], n: usize, order: usize) -> Vec<Vec<TPoly>> {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| TPoly::from_coeffs(series.iter().take(order + 1).map(|m| m.get(r, c).clone()).collect()))
                .collect()
        })
        .collect()
}

fn apply(m: &[Vec<TPoly>], v: &[TPoly], order: usize) -> Vec<TPoly> {
    m.iter()
        .map(|row| {
            let mut acc = TPoly::zero();
            for (a, b) in row.iter().zip(v) {
                acc.add_assign_mul(a, b);
            }
            acc.truncate(order)
        })
        .collect()
}

fn bracket(mu: &PolyAlgebra, u: &[TPoly], v: &[TPoly], order: usize) -> Vec<TPoly> {
    let n = mu.dim();
    let mut out = vec![TPoly::zero(); n];
    for (i, ui) in u.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
        for (j, vj) in v.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            let w = (ui * vj).truncate(order);
            for (k, slot) in out.iter_mut().enumerate() {
                slot.add_assign_mul(&w, mu.constant_at(i, j, k));
            }
        }
    }
    out.into_iter().map(|p| p.truncate(order)).collect()
}

/// Whether `mu2(x,y) = Φ_t(mu(Φ_t⁻¹x, Φ_t⁻¹y))` on all basis pairs, comparing
/// every power of `t` up to `order`.
pub fn equivalence_check(
    mu: &PolyAlgebra,
    mu2: &PolyAlgebra,
    phi: &[Matrix],
    order: usize,
) -> Result<bool, DeformationError> {
    let n = mu.dim();
    if mu2.dim() != n {
        return Err(DeformationError::Dimension { expected: n, got: mu2.dim() });
    }
    check_leading(phi, n)?;
    let psi = inverse_series(phi, order)?;
    let phi_t = poly_entries(phi, n, order);
    let psi_t = poly_entries(&psi, n, order);
    let columns: Vec<Vec<TPoly>> = (0..n).map(|c| psi_t.iter().map(|row| row[c].clone()).collect()).collect();
    for a in 0..n {
        for b in 0..n {
            let inner = bracket(mu, &columns[a], &columns[b], order);
            let rhs = apply(&phi_t, &inner, order);
            let lhs = mu2.basis_bracket(a, b).iter().map(|p| p.truncate(order));
            if !lhs.zip(&rhs).all(|(l, r)| l == *r) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
