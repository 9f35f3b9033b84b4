use std::collections::HashMap;

use super::{LinalgError, Matrix};
use crate::exactnum::MultiPoly;

/// `det(Σ λᵢ·Bᵢ)` as a polynomial in `λ₁..λₘ`.
///
/// Laplace expansion along rows, memoised on the set of columns already
/// used, so the work is `O(2ⁿ·n)` polynomial products rather than `n!`.
pub fn det_of_family(family: &[Matrix]) -> Result<MultiPoly, LinalgError> {
    let m = family.len();
    let Some(first) = family.first() else {
        return Ok(MultiPoly::zero(0));
    };
    let n = first.rows();
    if family.iter().any(|b| !b.is_square() || b.rows() != n) {
        return Err(LinalgError::Shape("family members must be square and of equal size".into()));
    }
    if n > 16 {
        return Err(LinalgError::Shape(format!("parametric determinant of size {n} is not supported")));
    }
    let entry = |r: usize, c: usize| {
        let mut p = MultiPoly::zero(m);
        for (k, b) in family.iter().enumerate() {
            p = p.add(&MultiPoly::linear(m, k, b.get(r, c).clone()));
        }
        p
    };
    let entries: Vec<Vec<MultiPoly>> = (0..n).map(|r| (0..n).map(|c| entry(r, c)).collect()).collect();

    // minors[mask] = det of rows (n - |mask|)..n restricted to columns in mask
    let mut minors: HashMap<u32, MultiPoly> = HashMap::new();
    minors.insert(0, MultiPoly::constant(m, crate::exactnum::Scalar::one()));
    for size in 1..=n {
        let row = n - size;
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        for (&mask, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 || entries[row][c].is_zero() {
                    continue;
                }
                // sign from the position of c among the columns of the new minor
                let before = (mask & ((1 << c) - 1)).count_ones();
                let term = entries[row][c].mul(minor);
                let term = if before % 2 == 1 {
                    term.scale(&-crate::exactnum::Scalar::one())
                } else {
                    term
                };
                let slot = next.entry(mask | (1 << c)).or_insert_with(|| MultiPoly::zero(m));
                *slot = slot.add(&term);
            }
        }
        minors = next;
    }
    Ok(minors.remove(&((1u32 << n) - 1)).unwrap_or_else(|| MultiPoly::zero(m)))
}
