//! Exact multivariate polynomial and rational-function arithmetic over ℚ.
//!
//! Rational functions are kept unreduced (no multivariate GCD) and compared by
//! cross-multiplication. Derivations and substitution endomorphisms act on
//! them, and matrices over them are handled with fraction-free elimination.

mod linalg;
mod matrix;
mod parse;
mod poly;
mod ratfunc;
pub mod rational;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use linalg::{bareiss, linear_solve, mat_inverse, nullspace, Echelon, LinearSolution};
pub(crate) use linalg::common_denominator as linalg_common_denominator;
pub use matrix::{Matrix, Ring, RfMatrix};
pub use parse::parse_ratfunc;
pub use poly::{Monomial, MultiPoly, Vars};
pub use ratfunc::{commutation_factor, rf_derive, rf_equals, rf_substitute, DerivationTable, RatFunc, SubstEndo};
pub use rational::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution is not defined on variable `{0}`")]
    OutsideDomain(String),
    #[error("no uniform commutation factor (inconsistent at `{0}`)")]
    NoCommutationFactor(String),
    #[error("singular matrix")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("inexact division during fraction-free elimination")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}

/// One polynomial term in JSON form: `{"coeff": "p/q", "exps": [e1, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

pub fn poly_to_json(p: &MultiPoly) -> Vec<TermJson> {
    p.terms()
        .rev()
        .map(|(m, c)| TermJson { coeff: rational::format_rational(c), exps: m.exps().to_vec() })
        .collect()
}

pub fn poly_from_json(vars: &Vars, terms: &[TermJson]) -> Result<MultiPoly, FieldError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != vars.len() {
            return Err(FieldError::Shape(format!(
                "exponent vector of length {} for {} variables",
                t.exps.len(),
                vars.len()
            )));
        }
        out.push((Monomial::from_exps(t.exps.clone()), rational::parse_rational(&t.coeff)?));
    }
    Ok(MultiPoly::from_terms(vars, out))
}

/// Row-major nested arrays of rational-function strings.
pub fn matrix_to_strings(m: &RfMatrix) -> Vec<Vec<String>> {
    m.to_rows().into_iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

pub fn matrix_from_strings<S: AsRef<str>>(vars: &Vars, rows: &[Vec<S>]) -> Result<RfMatrix, FieldError> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_ratfunc(s.as_ref(), vars)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Ok(Matrix::zeros(0, 0, &RatFunc::zero(vars)));
    }
    Matrix::from_rows(parsed, &RatFunc::zero(vars))
}
