use serde::Serialize;

use crate::field::{matrix_to_strings, RfMatrix};

use super::category::EvalCategory;

/// One failing instance: where (a triple, a generator, ...), the witness
/// object, and the component residual `lhs − rhs` there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub at: serde_json::Value,
    pub object: String,
    pub residual: Vec<Vec<String>>,
}

impl Failure {
    pub fn new(at: serde_json::Value, cat: &EvalCategory, object: usize, residual: &RfMatrix) -> Self {
        Failure { at, object: cat.objects()[object].name.clone(), residual: matrix_to_strings(residual) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report { check: check.to_string(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn push(&mut self, at: serde_json::Value, cat: &EvalCategory, object: usize, residual: &RfMatrix) {
        self.failures.push(Failure::new(at, cat, object, residual));
    }
}
