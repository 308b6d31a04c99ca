//! Serializable report documents. Every rational is rendered as a string
//! and field order is fixed by declaration order, so reports are
//! byte-for-byte reproducible.

use kmu_core::contact::ModelInvariants;
use kmu_core::report::{CheckRecord, Note};
use kmu_core::scalar::format_rational;
use kmu_core::submanifold::{SubmanifoldSummary, ThetaData};
use kmu_core::Scalar;
use serde::Serialize;

pub fn q(value: &Scalar) -> String {
    format_rational(value)
}

fn q_vec(values: &[Scalar]) -> Vec<String> {
    values.iter().map(q).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelEcho {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deformation_a: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantsOut {
    pub kappa: String,
    pub mu: String,
    pub lambda: String,
    #[serde(rename = "boeckx_I")]
    pub boeckx_i: String,
}

impl From<&ModelInvariants<Scalar>> for InvariantsOut {
    fn from(inv: &ModelInvariants<Scalar>) -> Self {
        Self { kappa: q(&inv.kappa), mu: q(&inv.mu), lambda: q(&inv.lambda), boeckx_i: q(&inv.boeckx_i) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeformationOut {
    pub a: String,
    pub before: InvariantsOut,
    pub after: InvariantsOut,
    pub predicted: PredictedOut,
    pub records: Vec<CheckRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictedOut {
    pub kappa: String,
    pub mu: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaOut {
    pub sin: String,
    pub cos: String,
    pub a: String,
    pub b: String,
}

impl From<&ThetaData<Scalar>> for ThetaOut {
    fn from(t: &ThetaData<Scalar>) -> Self {
        Self { sin: q(&t.sin), cos: q(&t.cos), a: q(&t.a), b: q(&t.b) }
    }
}

/// Classification record of one leaf.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubmanifoldOut {
    pub kind: String,
    /// Z-choices or `(c, d)`, as given.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    pub involutive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involutivity_witness: Option<[usize; 2]>,
    pub classification: Option<String>,
    #[serde(rename = "V")]
    pub v: Option<Vec<String>>,
    pub h1_eigenvalue: Option<String>,
    pub h2_eigenvalue: Option<String>,
    pub tn_split: Option<[usize; 2]>,
    pub leaf_curvature: Option<String>,
    pub leaf_curvature_plus: Option<String>,
    pub leaf_curvature_minus: Option<String>,
    pub theta: Option<ThetaOut>,
    pub records: Vec<CheckRecord>,
}

impl SubmanifoldOut {
    pub fn from_summary(params: Vec<String>, s: &SubmanifoldSummary<Scalar>, records: Vec<CheckRecord>) -> Self {
        Self {
            kind: s.kind.clone(),
            params,
            involutive: s.involutive,
            involutivity_witness: None,
            classification: Some(s.classification.clone()),
            v: s.v.as_deref().map(q_vec),
            h1_eigenvalue: s.h1_eigenvalue.as_ref().map(q),
            h2_eigenvalue: s.h2_eigenvalue.as_ref().map(q),
            tn_split: Some([s.tn_split.0, s.tn_split.1]),
            leaf_curvature: s.leaf_curvature.as_ref().map(q),
            leaf_curvature_plus: s.leaf_curvature_plus.as_ref().map(q),
            leaf_curvature_minus: s.leaf_curvature_minus.as_ref().map(q),
            theta: s.theta.as_ref().map(ThetaOut::from),
            records,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub model: ModelEcho,
    pub invariants: InvariantsOut,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationOut>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub submanifolds: Vec<SubmanifoldOut>,
    pub notes: Vec<Note>,
    pub pass: bool,
}

impl Report {
    /// Every record in the document, in order.
    pub fn all_records(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records
            .iter()
            .chain(self.deformation.iter().flat_map(|d| d.records.iter()))
            .chain(self.submanifolds.iter().flat_map(|s| s.records.iter()))
    }

    /// Recomputes `pass` from the records.
    pub fn seal(mut self) -> Self {
        let pass = self.all_records().all(CheckRecord::passed);
        self.pass = pass;
        self
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.all_records().filter(|r| !r.passed()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    pub invariants: InvariantsOut,
    pub expected_boeckx_i: String,
    pub failed_records: Vec<CheckRecord>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RejectedPoint {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub min_boeckx_i: String,
    pub max_boeckx_i: String,
    pub distinct_boeckx_i: Vec<String>,
    pub records: Vec<CheckRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub points: Vec<SweepRow>,
    pub rejected: Vec<RejectedPoint>,
    pub summary: SweepSummary,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableEntry {
    pub index: Vec<usize>,
    pub value: String,
}

/// Non-zero connection coefficients `Γ^k_ij` (index `[i, j, k]`) and
/// curvature components `R^l_ijk` (index `[i, j, k, l]`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TablesDump {
    pub model: ModelEcho,
    pub basis: Vec<String>,
    pub connection: Vec<TableEntry>,
    pub curvature: Vec<TableEntry>,
}
