use kmu_core::connection::{levi_civita, riemann, sectional_curvature};
use kmu_core::contact::{boeckx_invariant, build_contact_structure, extract_kappa_mu};
use kmu_core::deformation::{predicted_invariants, verify_deformation};
use kmu_core::lie::build_boeckx_model;
use kmu_core::linalg::{inner, Matrix, Vector};
use kmu_core::report::CheckRecord;
use kmu_core::scalar::{format_rational, int, parse_rational, ratio};
use kmu_core::submanifold::{
    build_distribution, decomposition_records, gauss_codazzi_residuals, second_fundamental_form, summarize,
    theta_parametrization, DistributionKind,
};
use kmu_core::Scalar;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_ratio() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_ratio() -> impl Strategy<Value = Scalar> {
    small_ratio().prop_filter("non-zero", |q| !q.is_zero())
}

fn positive_ratio() -> impl Strategy<Value = Scalar> {
    (1i64..=12, 1i64..=7).prop_map(|(n, d)| ratio(n, d))
}

fn vector(dim: usize) -> impl Strategy<Value = Vector<Scalar>> {
    proptest::collection::vec(small_ratio(), dim).prop_map(Vector::new)
}

/// `(n, α, β)` with `0 ≤ α < β`.
fn model_params() -> impl Strategy<Value = (usize, Scalar, Scalar)> {
    (2usize..=3, 0i64..=3, 1i64..=4, 1i64..=3).prop_map(|(n, a, gap, den)| (n, ratio(a, den), ratio(a + gap, den)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in small_ratio(), b in small_ratio(), c in nonzero_ratio()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * (b.clone() + &c), a.clone() * &b + a.clone() * &c);
        prop_assert_eq!((a.clone() / &c) * &c, a.clone());
        prop_assert_eq!(c.clone() * c.recip(), Scalar::one());
    }

    #[test]
    fn rationals_round_trip_in_lowest_terms(n in -500i64..500, d in 1i64..60) {
        let q = ratio(n, d);
        let text = format_rational(&q);
        prop_assert_eq!(parse_rational(&text).unwrap(), q.clone());
        prop_assert_eq!(parse_rational(&format!("{}/{}", 3 * n, 3 * d)).unwrap(), q);
        prop_assert!(!text.contains('.'));
    }

    #[test]
    fn inner_is_bilinear_and_symmetric(
        u in vector(5), v in vector(5), w in vector(5), s in small_ratio(),
        diag in proptest::collection::vec(positive_ratio(), 5),
    ) {
        let g = Matrix::diagonal(diag);
        prop_assert_eq!(inner(&u, &v, &g).unwrap(), inner(&v, &u, &g).unwrap());
        let mut su_w = u.scale(&s);
        su_w.axpy(&int(1), &w);
        let lhs = inner(&su_w, &v, &g).unwrap();
        prop_assert_eq!(lhs, s * inner(&u, &v, &g).unwrap() + inner(&w, &v, &g).unwrap());
    }

    #[test]
    fn bracket_is_antisymmetric_and_bilinear((n, a, b) in model_params(), seed in proptest::collection::vec(small_ratio(), 21), s in small_ratio()) {
        let m = build_boeckx_model(n, a, b).unwrap();
        let d = m.algebra.dim();
        let u = Vector::new(seed[..d].to_vec());
        let v = Vector::new(seed[d..2 * d].to_vec());
        let uv = m.algebra.bracket(&u, &v).unwrap();
        prop_assert_eq!(&uv, &-&m.algebra.bracket(&v, &u).unwrap());
        prop_assert!(m.algebra.bracket(&u, &u).unwrap().is_negligible());
        prop_assert_eq!(m.algebra.bracket(&u.scale(&s), &v).unwrap(), uv.scale(&s));
    }

    #[test]
    fn sectional_curvature_ignores_plane_basis(
        (n, a, b) in model_params(),
        seed in proptest::collection::vec(small_ratio(), 14),
        (p, q, r, s) in (small_ratio(), small_ratio(), small_ratio(), small_ratio()),
    ) {
        let m = build_boeckx_model(n, a, b).unwrap();
        let d = m.algebra.dim();
        let curv = riemann(&m.algebra, &levi_civita(&m.algebra).unwrap());
        let g = m.algebra.metric();
        let u = Vector::new(seed[..d].to_vec());
        let v = Vector::new(seed[7..7 + d].to_vec());
        let det = p.clone() * &s - q.clone() * &r;
        let Ok(k) = sectional_curvature(&curv, g, &u, &v) else { return Ok(()) };
        prop_assume!(!det.is_zero());
        let mut u2 = u.scale(&p);
        u2.axpy(&q, &v);
        let mut v2 = u.scale(&r);
        v2.axpy(&s, &v);
        prop_assert_eq!(sectional_curvature(&curv, g, &u2, &v2).unwrap(), k);
    }

    #[test]
    fn boeckx_invariant_survives_deformation_formula(num in 1i64..=8, den in 1i64..=8, (_, a, b) in model_params(), d in positive_ratio()) {
        let lambda = (b.clone() * &b - a.clone() * &a) / int(4);
        let kappa = int(1) - lambda.clone() * &lambda;
        let mu = int(2) + (a.clone() * &a + b.clone() * &b) / int(2);
        let before = boeckx_invariant(&kappa, &mu).unwrap();
        for t in [ratio(num, den), d] {
            let (k, m) = predicted_invariants(&kappa, &mu, &t).unwrap();
            prop_assert!(k < int(1));
            // 1 − κ̃ = λ²/t², so the root is exact
            prop_assert_eq!(boeckx_invariant(&k, &m).unwrap(), before.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn recomputed_deformation_matches_prediction((n, a, b) in model_params(), t in positive_ratio()) {
        let m = build_boeckx_model(n, a, b).unwrap();
        let cs = build_contact_structure(&m).unwrap();
        let curv = riemann(&m.algebra, &levi_civita(&m.algebra).unwrap());
        let inv = extract_kappa_mu(&curv, &cs).unwrap();
        let out = verify_deformation(&m.algebra, &cs, &inv, &t).unwrap();
        prop_assert!(out.records.iter().all(CheckRecord::passed), "{:?}", out.records);
        prop_assert_eq!(out.after.boeckx_i, inv.boeckx_i);
    }

    #[test]
    fn diagonal_leaves_are_umbilical_space_forms((n, a, b) in model_params(), c in nonzero_ratio(), d in nonzero_ratio()) {
        let m = build_boeckx_model(n, a, b).unwrap();
        let conn = levi_civita(&m.algebra).unwrap();
        let curv = riemann(&m.algebra, &conn);
        let cs = build_contact_structure(&m).unwrap();
        let inv = extract_kappa_mu(&curv, &cs).unwrap();
        let dist = build_distribution(n, DistributionKind::Diagonal { c: c.clone(), d: d.clone() }).unwrap();
        let geom = second_fundamental_form(&m.algebra, &conn, &cs, &dist).unwrap();
        let mut records = decomposition_records(&cs, &inv, &dist, &geom);
        records.extend(gauss_codazzi_residuals(&conn, &curv, &geom));
        prop_assert!(records.iter().all(CheckRecord::passed), "{:?}", records);
        let s = summarize(&cs, &dist, &geom).unwrap();
        let th = theta_parametrization(&c, &d, &cs.lambda).unwrap();
        let expected = int(2) * (int(1) - inv.mu.clone() / int(2) + cs.lambda.clone() * &th.sin);
        prop_assert_eq!(s.leaf_curvature, Some(expected));
        prop_assert_eq!(s.h1_eigenvalue, Some(th.b));
        prop_assert_eq!(s.h2_eigenvalue, Some(th.a));
    }
}
