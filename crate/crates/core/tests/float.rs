//! The same pipeline instantiated over `f64`.

use kmu_core::connection::{levi_civita, riemann};
use kmu_core::contact::{build_contact_structure, extract_kappa_mu, verify_identities};
use kmu_core::lie::build_boeckx_model;
use kmu_core::report::CheckRecord;
use kmu_core::submanifold::{build_distribution, gauss_codazzi_residuals, second_fundamental_form, summarize, DistributionKind};

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-9
}

#[test]
fn invariants_for_irrational_parameters() {
    let (alpha, beta) = (0.5_f64, std::f64::consts::SQRT_2);
    let m = build_boeckx_model(3, alpha, beta).unwrap();
    let conn = levi_civita(&m.algebra).unwrap();
    let curv = riemann(&m.algebra, &conn);
    let cs = build_contact_structure(&m).unwrap();
    let inv = extract_kappa_mu(&curv, &cs).unwrap();
    let gap = beta * beta - alpha * alpha;
    assert!(close(inv.lambda, gap / 4.0));
    assert!(close(inv.kappa, 1.0 - gap * gap / 16.0));
    assert!(close(inv.mu, 2.0 + (alpha * alpha + beta * beta) / 2.0));
    assert!(close(inv.boeckx_i, -(beta * beta + alpha * alpha) / gap));
    for r in verify_identities(&conn, &curv, &cs, &inv) {
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn diagonal_leaf_in_floating_point() {
    let m = build_boeckx_model(3, 1.0_f64, 3.0).unwrap();
    let conn = levi_civita(&m.algebra).unwrap();
    let curv = riemann(&m.algebra, &conn);
    let cs = build_contact_structure(&m).unwrap();
    let dist = build_distribution(3, DistributionKind::Diagonal { c: 0.3, d: 0.7 }).unwrap();
    let geom = second_fundamental_form(&m.algebra, &conn, &cs, &dist).unwrap();
    assert!(gauss_codazzi_residuals(&conn, &curv, &geom).iter().all(CheckRecord::passed));
    let s = summarize(&cs, &dist, &geom).unwrap();
    let sin = (0.09 - 0.49) / 0.58;
    assert!(close(s.leaf_curvature.unwrap(), 2.0 * (1.0 - 3.5 + 2.0 * sin)));
}
