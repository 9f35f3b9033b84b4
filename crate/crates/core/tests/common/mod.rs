//! Strategies and checks shared by the property suite and the acceptance run.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use leibniz::catalog::{catalog, CatalogEntry};
use leibniz::cohomology::{coboundary, coboundary_matrix, cohomology, is_cocycle, Cochain};
use leibniz::deformation::{deform, equivalence_check, leibniz_defect};
use leibniz::exactnum::{Rational, Scalar, TPoly};
use leibniz::linalg::Matrix;
use leibniz::SeriesKind;
use proptest::prelude::*;

pub fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=5, -6i64..=6, 1i64..=5).prop_map(|(a, b, c, d)| {
        Scalar::new(Rational::new(a.into(), b.into()), Rational::new(c.into(), d.into()))
    })
}

pub fn int_scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -1i64..=1).prop_map(|(re, im)| Scalar::gaussian(re, im))
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(int_scalar(), rows * cols)
        .prop_map(move |v| Matrix::from_rows(v.chunks(cols).map(<[Scalar]>::to_vec).collect()).unwrap())
}

pub fn entries_up_to(dim: usize) -> Vec<&'static CatalogEntry> {
    catalog().entries().iter().filter(|e| e.dim <= dim && e.dim > 0).collect()
}

/// `L·U` with unit-triangular `L` and unit pivots in `U`: invertible over
/// the Gaussian integers, so transported constants stay small.
pub fn unimodular(n: usize) -> impl Strategy<Value = Matrix> {
    let unit = prop::sample::select(vec![Scalar::one(), -Scalar::one(), Scalar::i(), -Scalar::i()]);
    let small = || prop::collection::vec(prop::sample::select(vec![Scalar::zero(), Scalar::one(), -Scalar::one()]), n * n);
    (small(), small(), prop::collection::vec(unit, n)).prop_map(move |(l, u, d)| {
        let tri = |v: &[Scalar], lower: bool, diag: &dyn Fn(usize) -> Scalar| {
            let rows = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| match (r == c, (c < r) == lower) {
                            (true, _) => diag(r),
                            (false, true) => v[r * n + c].clone(),
                            (false, false) => Scalar::zero(),
                        })
                        .collect()
                })
                .collect();
            Matrix::from_rows(rows).unwrap()
        };
        let l = tri(&l, true, &|_| Scalar::one());
        let u = tri(&u, false, &|r| d[r].clone());
        l.mul(&u).unwrap()
    })
}

/// A catalog entry of dimension at most `dim` with an invertible basis change.
pub fn entry_and_change(dim: usize) -> impl Strategy<Value = (&'static CatalogEntry, Matrix)> {
    prop::sample::select(entries_up_to(dim)).prop_flat_map(|e| (Just(e), unimodular(e.dim)))
}

pub fn sparse_cochain(arity: usize, n: usize) -> impl Strategy<Value = Cochain> {
    let tuple = prop::collection::vec(1..=n, arity);
    prop::collection::vec((tuple, 1..=n, int_scalar()), 0..=4).prop_map(move |terms| {
        let mut f = Cochain::zero(arity, n);
        for (idx, k, c) in terms {
            let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            f.value_mut(&zero_based)[k - 1] += &c;
        }
        f
    })
}

pub fn hl2_representatives(e: &CatalogEntry) -> Vec<Cochain> {
    static CACHE: OnceLock<Mutex<HashMap<String, Vec<Cochain>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&e.id) {
        return v.clone();
    }
    let reps = cohomology(&e.algebra, 2).unwrap().representatives;
    cache.lock().unwrap().insert(e.id.clone(), reps.clone());
    reps
}

/// A random 2-cocycle: representative combination plus a coboundary.
pub fn cocycle() -> impl Strategy<Value = (&'static CatalogEntry, Cochain)> {
    prop::sample::select(entries_up_to(4)).prop_flat_map(|e| {
        let reps = hl2_representatives(e).len();
        (Just(e), prop::collection::vec(int_scalar(), reps), sparse_cochain(1, e.dim)).prop_map(|(e, coeffs, g)| {
            let mut f = coboundary(&e.algebra, &g).unwrap();
            for (c, r) in coeffs.iter().zip(hl2_representatives(e)) {
                f = f.add(&r.scale(c)).unwrap();
            }
            (e, f)
        })
    })
}

/// Cocycles, half of them perturbed, so both sides of an equivalence get exercised.
pub fn mixed_cochain() -> impl Strategy<Value = (&'static CatalogEntry, Cochain)> {
    cocycle().prop_flat_map(|(e, f)| (Just(e), Just(f), prop::option::weighted(0.5, sparse_cochain(2, e.dim)))).prop_map(
        |(e, f, noise)| match noise {
            Some(noise) => (e, f.add(&noise).unwrap()),
            None => (e, f),
        },
    )
}

pub fn one_cochain_matrix(g: &Cochain) -> Matrix {
    let n = g.dim();
    let mut m = Matrix::zeros(n, n);
    for (idx, out) in g.entries() {
        for (k, c) in out {
            m.set(k - 1, idx[0] - 1, c);
        }
    }
    m
}

/// Newton interpolation through `(0, v₀), (1, v₁), …`.
pub fn interpolate(values: &[Scalar]) -> TPoly {
    let mut table = values.to_vec();
    let m = values.len();
    for level in 1..m {
        for i in (level..m).rev() {
            let den = Scalar::from_int(level as i64);
            table[i] = (&table[i] - &table[i - 1]).checked_div(&den).unwrap();
        }
    }
    let mut p = TPoly::zero();
    for i in (0..m).rev() {
        let shift = &TPoly::t() - &TPoly::constant(Scalar::from_int(i as i64));
        p = &(&p * &shift) + &TPoly::constant(table[i].clone());
    }
    p
}

/// `δ∘δ = 0`: matrix products for `p = 0, 1`, the direct coboundary on
/// every basis 2-cochain for `p = 2`.
pub fn coboundary_squares_to_zero(e: &CatalogEntry) -> Result<(), String> {
    let a = &e.algebra;
    for p in 0..2 {
        let prod = coboundary_matrix(a, p + 1).unwrap().mul(&coboundary_matrix(a, p).unwrap()).unwrap();
        if !prod.is_zero() {
            return Err(format!("{} p={p}", e.id));
        }
    }
    let n = a.dim();
    for flat in 0..n * n * n {
        let (i, j, k) = (flat / (n * n), (flat / n) % n, flat % n);
        let f = Cochain::from_entries(2, n, [(vec![i + 1, j + 1], vec![(k + 1, Scalar::one())])]).unwrap();
        if !coboundary(a, &coboundary(a, &f).unwrap()).unwrap().is_zero() {
            return Err(format!("{} p=2 on basis cochain ({i},{j},{k})", e.id));
        }
    }
    Ok(())
}

/// The `t¹` part of the defect of `μ + tf` vanishes exactly when `f` is a cocycle.
pub fn first_order_defect_matches(e: &CatalogEntry, f: &Cochain) -> Result<(), String> {
    let report = leibniz_defect(&deform(&e.algebra, &[(f.clone(), 1)]).unwrap()).unwrap();
    if !report.coefficient(0).is_empty() {
        return Err(format!("{}: nonzero t^0 defect", e.id));
    }
    let cocycle = is_cocycle(&e.algebra, f).unwrap();
    if report.coefficient(1).is_empty() != cocycle {
        return Err(format!("{}: t^1 defect disagrees with the cocycle test ({cocycle})", e.id));
    }
    Ok(())
}

pub fn transport_preserves_invariants(e: &CatalogEntry, p: &Matrix) -> Result<(), String> {
    let moved = e.algebra.transport(p).unwrap();
    for kind in [SeriesKind::LowerCentral, SeriesKind::Derived] {
        if moved.series(kind).dims() != e.algebra.series(kind).dims() {
            return Err(format!("{}: {kind:?} series changed", e.id));
        }
    }
    for degree in [1, 2] {
        let (x, y) = (cohomology(&moved, degree).unwrap().dim_hl, cohomology(&e.algebra, degree).unwrap().dim_hl);
        if x != y {
            return Err(format!("{}: HL{degree} changed from {y} to {x}", e.id));
        }
    }
    Ok(())
}

/// `μ + t·δg` is equivalent to `μ` modulo `t²` via `Φ_t = id + t·g`.
pub fn coboundary_deformation_is_trivial(e: &CatalogEntry, g: &Cochain) -> Result<(), String> {
    let a = &e.algebra;
    let mu = deform(a, &[(coboundary(a, g).unwrap(), 1)]).unwrap();
    let base = deform(a, &[]).unwrap();
    let phi = [Matrix::identity(a.dim()), one_cochain_matrix(g)];
    if equivalence_check(&mu, &base, &phi, 1).unwrap() {
        Ok(())
    } else {
        Err(format!("{}: coboundary deformation not trivial at order 1", e.id))
    }
}
