//! Verification records shared by every check in the crate.

use serde::Serialize;

use crate::linalg::Vector;
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One identity checked over a family of index tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub identity_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_indices: Option<Vec<usize>>,
    /// Largest absolute residual entry seen, as an exact string.
    pub residual: String,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// A yes/no check with no numeric residual.
    pub fn verdict(id: impl Into<String>, ok: bool, witness: Option<Vec<usize>>) -> Self {
        Self {
            identity_id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness_indices: if ok { None } else { witness },
            residual: if ok { "0".into() } else { "1".into() },
        }
    }
}

/// Free-form observation attached to a report (discrepancies, recorded-only values).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Note {
    pub topic: String,
    pub message: String,
}

impl Note {
    pub fn new(topic: impl Into<String>, message: impl Into<String>) -> Self {
        Self { topic: topic.into(), message: message.into() }
    }
}

/// Accumulates residuals for one identity and keeps the worst witness.
#[derive(Debug, Clone)]
pub struct Tally<S> {
    id: String,
    worst: S,
    witness: Option<Vec<usize>>,
}

impl<S: Field> Tally<S> {
    pub fn new(id: impl Into<String>) -> Self {
        Self { id: id.into(), worst: S::zero(), witness: None }
    }

    pub fn scalar(&mut self, indices: &[usize], residual: &S) {
        if residual.is_negligible() {
            return;
        }
        let r = residual.abs();
        if self.witness.is_none() || r > self.worst {
            self.worst = r;
            self.witness = Some(indices.to_vec());
        }
    }

    pub fn vector(&mut self, indices: &[usize], residual: &Vector<S>) {
        if let Some((_, r)) = residual.argmax_abs() {
            self.scalar(indices, &r);
        }
    }

    /// Residual `lhs − rhs`.
    pub fn compare(&mut self, indices: &[usize], lhs: &Vector<S>, rhs: &Vector<S>) {
        self.vector(indices, &(lhs - rhs));
    }

    pub fn compare_scalar(&mut self, indices: &[usize], lhs: &S, rhs: &S) {
        self.scalar(indices, &(lhs.clone() - rhs.clone()));
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn finish(self) -> CheckRecord {
        match self.witness {
            None => CheckRecord {
                identity_id: self.id,
                status: Status::Pass,
                witness_indices: None,
                residual: "0".into(),
            },
            Some(w) => CheckRecord {
                identity_id: self.id,
                status: Status::Fail,
                witness_indices: Some(w),
                residual: self.worst.to_string(),
            },
        }
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(CheckRecord::passed)
}
