use serde::Serialize;

use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CyStatus {
    Yes,
    No,
    Unknown,
}

/// Outcome of a Calabi-Yau criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyVerdict {
    pub status: CyStatus,
    /// Exponents realizing an existential criterion.
    pub witness: Option<Vec<i64>>,
    pub reasons: Vec<String>,
    pub bound_used: Option<i64>,
}

impl CyVerdict {
    pub fn yes(reasons: Vec<String>) -> Self {
        CyVerdict { status: CyStatus::Yes, witness: None, reasons, bound_used: None }
    }

    pub fn no(reasons: Vec<String>) -> Self {
        CyVerdict { status: CyStatus::No, witness: None, reasons, bound_used: None }
    }

    pub fn from_conditions(conditions: Vec<(String, bool)>) -> Self {
        let ok = conditions.iter().all(|(_, holds)| *holds);
        let reasons = conditions
            .into_iter()
            .map(|(c, holds)| format!("{}: {c}", if holds { "holds" } else { "fails" }))
            .collect();
        if ok {
            Self::yes(reasons)
        } else {
            Self::no(reasons)
        }
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound_used = Some(bound);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.status == CyStatus::Yes
    }
}

/// Nakayama automorphism of an extension: a block on the base generators and
/// a block on the adjoined ones (rows are images).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaDescription<F: Field> {
    pub on_base: Matrix<F>,
    pub on_new_generators: Matrix<F>,
    /// Scalars on adjoined inverses `t⁻¹`, for Laurent extensions.
    pub on_inverses: Option<Vec<F>>,
}

impl<F: Field> NakayamaDescription<F> {
    /// The automorphism on all generators of the polynomial extension.
    pub fn full_matrix(&self) -> Matrix<F> {
        self.on_base.direct_sum(&self.on_new_generators)
    }

    pub fn is_identity(&self) -> bool {
        self.full_matrix().is_identity() && self.on_inverses.as_ref().is_none_or(|v| v.iter().all(|c| c.is_one()))
    }
}

pub(crate) fn condition<F: Field>(label: &str, lhs: &Matrix<F>, rhs: &Matrix<F>) -> (String, bool) {
    (format!("{label} ({lhs} vs {rhs})"), lhs == rhs)
}
