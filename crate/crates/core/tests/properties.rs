mod common;

use common::*;
use leibniz::catalog::catalog;
use leibniz::cohomology::{coboundary, is_cocycle, reduce_mod_coboundaries};
use leibniz::deformation::{deform, equivalence_check, leibniz_defect, PolyAlgebra};
use leibniz::exactnum::{Monomial, Rational, Scalar, TPoly};
use leibniz::forms::{invariant_form_space, is_metric, verify_form};
use leibniz::linalg::{det_of_family, Matrix};
use leibniz::{Algebra, SeriesKind, Side};
use proptest::prelude::*;
proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn normalize_is_idempotent(a in -20i64..20, b in 1i64..20, c in -20i64..20, d in 1i64..20, k in 1i64..5) {
        let raw = Scalar::new(
            Rational::new_raw((a * k).into(), (b * k).into()),
            Rational::new_raw((c * k).into(), (-d * k).into()),
        );
        let once = raw.normalize();
        prop_assert!(once.is_canonical());
        prop_assert_eq!(once.normalize(), once.clone());
        prop_assert_eq!(once, Scalar::from_frac(a, b) + Scalar::from_frac(-c, d) * Scalar::i());
    }

    #[test]
    fn polynomial_evaluation_is_multiplicative(
        p in prop::collection::vec(small_scalar(), 0..5),
        q in prop::collection::vec(small_scalar(), 0..5),
        t0 in small_scalar(),
    ) {
        let (p, q) = (TPoly::from_coeffs(p), TPoly::from_coeffs(q));
        prop_assert_eq!((&p * &q).eval(&t0), &p.eval(&t0) * &q.eval(&t0));
    }

    #[test]
    fn nullspace_is_annihilated(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let null = m.nullspace();
        prop_assert_eq!(null.len() + m.rank(), m.cols());
        for v in &null {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        if !null.is_empty() {
            let basis = Matrix::from_rows(null).unwrap().transpose();
            prop_assert!(m.mul(&basis).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_of_transpose(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn singleton_family_determinant(b in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
        let n = b.rows();
        let poly = det_of_family(std::slice::from_ref(&b)).unwrap();
        let det = b.det().unwrap();
        prop_assert_eq!(poly.coeff(&Monomial(vec![n as u32])), det.clone());
        prop_assert_eq!(poly.terms().filter(|(_, c)| !c.is_zero()).count(), usize::from(!det.is_zero()));
    }

    #[test]
    fn transport_round_trip((e, p) in entry_and_change(5)) {
        let there = e.algebra.transport(&p).unwrap();
        let back = there.transport(&p.inverse().unwrap()).unwrap();
        prop_assert_eq!(back.structure(), e.algebra.structure());
    }

    #[test]
    fn series_and_forms_are_transport_invariant((e, p) in entry_and_change(5)) {
        let b = e.algebra.transport(&p).unwrap();
        for kind in [SeriesKind::LowerCentral, SeriesKind::Derived] {
            prop_assert_eq!(b.series(kind).dims(), e.algebra.series(kind).dims());
        }
        prop_assert_eq!(b.leibniz_kernel().dim(), e.algebra.leibniz_kernel().dim());
        prop_assert_eq!(b.center().dim(), e.algebra.center().dim());
        prop_assert_eq!(invariant_form_space(&b).len(), invariant_form_space(&e.algebra).len());
        prop_assert_eq!(is_metric(&b).metric, is_metric(&e.algebra).metric);
    }

    #[test]
    fn coboundary_deformation_is_trivial_to_first_order(
        (e, g) in prop::sample::select(entries_up_to(5)).prop_flat_map(|e| (Just(e), sparse_cochain(1, e.dim)))
    ) {
        prop_assert_eq!(coboundary_deformation_is_trivial(e, &g), Ok(()));
    }

    #[test]
    fn reduction_is_idempotent_and_kills_coboundaries(
        (e, f, g) in cocycle().prop_flat_map(|(e, f)| (Just(e), Just(f), sparse_cochain(1, e.dim)))
    ) {
        let a = &e.algebra;
        let r = reduce_mod_coboundaries(a, &f).unwrap();
        prop_assert_eq!(reduce_mod_coboundaries(a, &r).unwrap(), r.clone());
        let dg = coboundary(a, &g).unwrap();
        prop_assert!(reduce_mod_coboundaries(a, &dg).unwrap().is_zero());
        prop_assert_eq!(reduce_mod_coboundaries(a, &f.add(&dg).unwrap()).unwrap(), r);
    }

    #[test]
    fn equivalence_implies_isomorphic_members(
        (e, a_idx, b_idx, c, t0) in prop::sample::select(entries_up_to(4)).prop_flat_map(|e| {
            let n = e.dim;
            (Just(e), 0..n, 0..n, int_scalar(), int_scalar())
        })
    ) {
        prop_assume!(a_idx != b_idx && !c.is_zero());
        let n = e.dim;
        // Φ_t = I + tN with N² = 0, so Φ_t⁻¹ = I − tN and the transformed family is polynomial.
        let mut nmat = Matrix::zeros(n, n);
        nmat.set(a_idx, b_idx, c);
        let phi_at = |t: &Scalar| Matrix::identity(n).add(&nmat.scale(t)).unwrap();
        let member = |t: &Scalar| {
            let inv = phi_at(t).inverse().unwrap();
            e.algebra.transport(&inv.transpose()).unwrap()
        };
        let samples: Vec<Algebra> = (0..4).map(|k| member(&Scalar::from_int(k))).collect();
        let structure = (0..n * n * n)
            .map(|s| interpolate(&samples.iter().map(|m| m.structure()[s].clone()).collect::<Vec<_>>()))
            .collect();
        let mu2 = PolyAlgebra::from_structure(n, structure).unwrap();
        let mu = deform(&e.algebra, &[]).unwrap();
        prop_assert!(equivalence_check(&mu, &mu2, &[Matrix::identity(n), nmat.clone()], 6).unwrap());
        let p = phi_at(&t0).inverse().unwrap().transpose();
        prop_assert!(mu.eval(&t0).is_isomorphic_via(&mu2.eval(&t0), &p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    /// The `t¹` part of the defect vanishes exactly for cocycles.
    #[test]
    fn first_order_defect_iff_cocycle((e, f) in mixed_cochain()) {
        prop_assert_eq!(first_order_defect_matches(e, &f), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn cohomology_is_transport_invariant((e, p) in entry_and_change(4)) {
        prop_assert_eq!(transport_preserves_invariants(e, &p), Ok(()));
    }
}

#[test]
fn coboundary_squares_to_zero_on_the_catalog() {
    for e in catalog().entries() {
        assert_eq!(coboundary_squares_to_zero(e), Ok(()));
    }
}

#[test]
fn lie_entries_satisfy_every_identity() {
    for e in catalog().entries().iter().filter(|e| e.algebra.check_identity(Side::Lie).holds) {
        for side in Side::ALL {
            assert!(e.algebra.check_identity(side).holds, "{} {:?}", e.id, side);
        }
    }
}

#[test]
fn kernel_lies_in_the_derived_algebra() {
    for e in catalog().entries() {
        assert!(e.algebra.leibniz_kernel().is_subspace_of(&e.algebra.derived_algebra()), "{}", e.id);
    }
}

#[test]
fn direct_sums_are_nilpotent_exactly_when_both_summands_are() {
    let small = entries_up_to(3);
    for a in &small {
        for b in &small {
            let sum = a.algebra.direct_sum(&b.algebra);
            assert_eq!(sum.is_nilpotent(), a.algebra.is_nilpotent() && b.algebra.is_nilpotent(), "{}+{}", a.id, b.id);
        }
    }
}

#[test]
fn metric_witnesses_pass_verification_and_force_symmetry() {
    for e in catalog().entries() {
        let v = is_metric(&e.algebra);
        if let Some(w) = &v.witness {
            assert!(verify_form(&e.algebra, w).unwrap().all(), "{}", e.id);
        }
        if v.metric {
            assert!(e.algebra.check_identity(Side::Symmetric).holds, "{}", e.id);
        }
    }
}

#[test]
fn single_cocycle_obstructions_start_at_order_two() {
    for e in catalog().entries() {
        for c in e.cocycles.iter().filter(|c| !c.cochain.has_literal_t()) {
            let phi = c.at(&Scalar::one()).unwrap();
            if !is_cocycle(&e.algebra, &phi).unwrap() {
                continue;
            }
            let report = leibniz_defect(&deform(&e.algebra, &[(phi, 1)]).unwrap()).unwrap();
            assert!(report.obstruction_order.is_none_or(|k| k >= 2), "{}/{}", e.id, c.name);
            assert_eq!(report.obstruction_order.is_none(), report.coefficient(2).is_empty(), "{}/{}", e.id, c.name);
        }
    }
}
