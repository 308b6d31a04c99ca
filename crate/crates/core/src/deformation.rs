//! D_a-homothetic deformations.
//!
//! `φ̃ = φ`, `ξ̃ = ξ/a`, `η̃ = aη`, `g̃ = ag + a(a−1)η⊗η`. Reading `ξ̃ = ξ`
//! instead gives `η̃(ξ̃) = a`, which breaks the almost contact axioms for
//! `a ≠ 1`; [`fixed_reeb_note`] reports that reading's failure.

use crate::connection::{levi_civita, riemann};
use crate::contact::{boeckx_invariant, contact_axiom_records, extract_kappa_mu, ContactStructure, ModelInvariants};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::report::{CheckRecord, Note, Tally};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationParams<S> {
    a: S,
}

impl<S: Field> DeformationParams<S> {
    pub fn new(a: S) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::InvalidParameter(format!("deformation parameter a = {a} must be > 0")));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> &S {
        &self.a
    }
}

/// Deformed structure and the algebra carrying the deformed metric.
pub fn d_homothetic<S: Field>(
    algebra: &LieAlgebra<S>,
    cs: &ContactStructure<S>,
    a: &S,
) -> Result<(LieAlgebra<S>, ContactStructure<S>)> {
    let a = DeformationParams::new(a.clone())?.a;
    let metric = &cs.metric.scale(&a) + &Matrix::outer(&cs.eta, &cs.eta).scale(&(a.clone() * (a.clone() - S::one())));
    let deformed = algebra.with_metric(metric)?;
    let xi = cs.xi.scale(&(S::one() / a.clone()));
    let eta = cs.eta.scale(&a);
    let structure = ContactStructure::new(&deformed, cs.n, cs.phi.clone(), xi, eta)?;
    Ok((deformed, structure))
}

/// `κ̃ = (κ + a² − 1)/a²`, `μ̃ = (μ + 2a − 2)/a`.
pub fn predicted_invariants<S: Field>(kappa: &S, mu: &S, a: &S) -> Result<(S, S)> {
    let a = DeformationParams::new(a.clone())?.a;
    let a2 = a.clone() * a.clone();
    let kt = (kappa.clone() + a2.clone() - S::one()) / a2;
    let mt = (mu.clone() + S::two() * a.clone() - S::two()) / a;
    if kappa < &S::one() && kt >= S::one() {
        return Err(Error::InvalidParameter(format!("deformed kappa {kt} degenerates to the Sasakian case")));
    }
    Ok((kt, mt))
}

/// Before/after invariants of a deformation and the records certifying it.
#[derive(Debug, Clone)]
pub struct DeformationOutcome<S> {
    pub a: S,
    pub before: ModelInvariants<S>,
    pub after: ModelInvariants<S>,
    pub predicted_kappa: S,
    pub predicted_mu: S,
    pub records: Vec<CheckRecord>,
    pub notes: Vec<Note>,
}

/// Deforms, rebuilds connection, curvature and `h` on the new metric,
/// extracts `(κ̃, μ̃)` and compares with the predictions.
pub fn verify_deformation<S: Field>(
    algebra: &LieAlgebra<S>,
    cs: &ContactStructure<S>,
    before: &ModelInvariants<S>,
    a: &S,
) -> Result<DeformationOutcome<S>> {
    let (deformed, structure) = d_homothetic(algebra, cs, a)?;
    let conn = levi_civita(&deformed)?;
    let curv = riemann(&deformed, &conn);
    let after = extract_kappa_mu(&curv, &structure)?;
    let (pk, pm) = predicted_invariants(&before.kappa, &before.mu, a)?;

    let mut records: Vec<CheckRecord> = contact_axiom_records(&deformed, &structure)
        .into_iter()
        .map(|mut r| {
            r.identity_id = format!("deformed_{}", r.identity_id);
            r
        })
        .collect();

    let mut t = Tally::new("deformed_kappa_mu");
    t.compare_scalar(&[0], &after.kappa, &pk);
    t.compare_scalar(&[1], &after.mu, &pm);
    records.push(t.finish());

    let mut t = Tally::new("boeckx_invariant_preserved");
    t.compare_scalar(&[0], &after.boeckx_i, &before.boeckx_i);
    if let (Ok(x), Ok(y)) = (boeckx_invariant(&pk, &pm), boeckx_invariant(&before.kappa, &before.mu)) {
        t.compare_scalar(&[1], &x, &y);
    }
    records.push(t.finish());

    records.push(CheckRecord::verdict("deformed_kappa_below_one", after.kappa < S::one(), None));

    let notes = fixed_reeb_note(cs, a).into_iter().collect();
    Ok(DeformationOutcome { a: a.clone(), before: before.clone(), after, predicted_kappa: pk, predicted_mu: pm, records, notes })
}

/// Evaluates `η̃(ξ)` under the reading that keeps `ξ̃ = ξ`; returns a note
/// when that value is not 1.
pub fn fixed_reeb_note<S: Field>(cs: &ContactStructure<S>, a: &S) -> Option<Note> {
    let value = cs.eta.scale(a).dot(&cs.xi);
    (!(value.clone() - S::one()).is_negligible()).then(|| {
        Note::new(
            "deformation_reeb_field",
            format!("keeping the Reeb field unscaled gives eta~(xi~) = {value} != 1; using xi~ = xi/a instead"),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::build_contact_structure;
    use crate::lie::build_boeckx_model;
    use crate::scalar::{int, ratio};

    #[test]
    fn predicted_values() {
        assert_eq!(predicted_invariants(&int(0), &int(4), &int(2)).unwrap(), (ratio(3, 4), int(3)));
        assert_eq!(predicted_invariants(&int(-3), &int(7), &int(1)).unwrap(), (int(-3), int(7)));
        assert_eq!(predicted_invariants(&int(-3), &int(7), &int(2)).unwrap(), (int(0), ratio(9, 2)));
        for a in [ratio(1, 2), int(2), int(5)] {
            let (k, m) = predicted_invariants(&int(-3), &int(7), &a).unwrap();
            assert_eq!(boeckx_invariant(&k, &m).unwrap(), ratio(-5, 4));
        }
    }

    #[test]
    fn rejects_non_positive_a() {
        assert!(predicted_invariants(&int(0), &int(4), &int(0)).is_err());
        assert!(DeformationParams::new(int(-1)).is_err());
    }

    #[test]
    fn deformed_metric_is_diagonal() {
        let model = build_boeckx_model(2, int(1), int(3)).unwrap();
        let cs = build_contact_structure(&model).unwrap();
        let (alg, st) = d_homothetic(&model.algebra, &cs, &int(3)).unwrap();
        assert_eq!(alg.metric(), &Matrix::diagonal(vec![int(9), int(3), int(3), int(3), int(3)]));
        assert_eq!(st.eta_of(&st.xi), int(1));
        assert_eq!(st.lambda, ratio(2, 3));
    }

    #[test]
    fn identity_deformation_is_trivial() {
        let model = build_boeckx_model(2, int(0), int(2)).unwrap();
        let cs = build_contact_structure(&model).unwrap();
        let (_, st) = d_homothetic(&model.algebra, &cs, &int(1)).unwrap();
        assert_eq!(st, cs);
        assert!(fixed_reeb_note(&cs, &int(1)).is_none());
        assert!(fixed_reeb_note(&cs, &int(2)).is_some());
    }

    #[test]
    fn recomputed_invariants_match() {
        let model = build_boeckx_model(3, int(1), int(3)).unwrap();
        let cs = build_contact_structure(&model).unwrap();
        let conn = levi_civita(&model.algebra).unwrap();
        let before = extract_kappa_mu(&riemann(&model.algebra, &conn), &cs).unwrap();
        let out = verify_deformation(&model.algebra, &cs, &before, &int(2)).unwrap();
        assert_eq!((out.after.kappa.clone(), out.after.mu.clone()), (int(0), ratio(9, 2)));
        assert_eq!(out.after.boeckx_i, ratio(-5, 4));
        assert!(out.records.iter().all(CheckRecord::passed), "{:?}", out.records);
    }
}
