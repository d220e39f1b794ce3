//! Difference polynomial rings, the `GL_n` difference Hopf algebra, its
//! comodules and twists, `ord`, and the subcomodules `L_{r,s,p}`.
//!
//! Coefficients are rational numbers. An indeterminate carries a word `w`
//! of the semigroup, and `h` acts by `sym_w ↦ sym_{h·w}`.

mod comodule;
mod filtration;
mod gln;
mod poly;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::rational::{format_rational, parse_rational};
use crate::semigroup::{word_length, SemigroupError, Word};

pub use comodule::{
    comodule_axioms, dual, det_comodule, direct_sum, matrix_coefficient, standard_comodule, tensor, trivial_comodule,
    twist_comodule, AxiomReport, Comodule,
};
pub use filtration::{l_filtration, FiltrationReport, DEFAULT_BASIS_CAP};
pub use gln::{
    antipode, antipode_defect, coassociativity_defect, comultiply, counit, counit_defect, det, random_element, x,
    GlnHopf,
};
pub use poly::{permutations, GPoly, GRing, Ind, Mono, Sym};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("ord of the zero polynomial")]
    ZeroPolynomial,
    #[error("presentation mismatch")]
    PresentationMismatch,
    #[error("basis of {size} elements exceeds the cap {cap}")]
    BasisTooLarge { size: usize, cap: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `h·f`: every `sym_w` becomes `sym_{h·w}`.
pub fn gpoly_apply(h: &Word, f: &GPoly) -> Result<GPoly, HopfError> {
    let ring = f.ring();
    if h.presentation() != &ring.pres {
        return Err(HopfError::PresentationMismatch);
    }
    let mut memo: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for m in f.terms().keys() {
        for ind in m.keys() {
            if !memo.contains_key(&ind.word) {
                let w = ring.word(&ind.word)?;
                memo.insert(ind.word.clone(), h.mul(&w)?.exps().to_vec());
            }
        }
    }
    Ok(f.rename(|ind| Ind { word: memo[&ind.word].clone(), ..ind.clone() }))
}

/// Largest word length among the indeterminates of `f`; 0 for constants.
pub fn ord(f: &GPoly) -> Result<usize, HopfError> {
    if f.is_zero() {
        return Err(HopfError::ZeroPolynomial);
    }
    let ring = f.ring();
    let mut best = 0;
    for m in f.terms().keys() {
        for ind in m.keys() {
            best = best.max(word_length(&ring.word(&ind.word)?));
        }
    }
    Ok(best)
}

/// One term: coefficient and exponents keyed by `"x[i][j]@[...]"` etc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub vars: BTreeMap<String, u32>,
}

pub fn gpoly_to_json(f: &GPoly) -> Vec<TermJson> {
    f.terms()
        .iter()
        .rev()
        .map(|(m, c)| TermJson { coeff: format_rational(c), vars: m.iter().map(|(k, &e)| (k.key(), e)).collect() })
        .collect()
}

pub fn gpoly_from_json(ring: &Arc<GRing>, terms: &[TermJson]) -> Result<GPoly, HopfError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c = parse_rational(&t.coeff).map_err(|e| HopfError::Parse(e.to_string()))?;
        let mut m = Mono::new();
        for (k, &e) in &t.vars {
            let ind = Ind::parse_key(k)?;
            // validates the word against the presentation
            let w = ring.word(&ind.word)?;
            if w.exps() != ind.word.as_slice() {
                return Err(HopfError::Parse(format!("{k}: word not in normal form")));
            }
            if e > 0 {
                *m.entry(ind).or_insert(0) += e;
            }
        }
        out.push((m, c));
    }
    Ok(GPoly::from_terms(ring, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::int;
    use crate::semigroup::AbelianPresentation;

    fn y(ring: &Arc<GRing>, i: usize, exps: &[u32]) -> GPoly {
        GPoly::ind(ring, Ind::y(i, &ring.word(exps).unwrap()))
    }

    #[test]
    fn apply_examples() {
        let n1 = GRing::new(Arc::new(AbelianPresentation::free(1)), 0);
        let a = Word::generator(&n1.pres, 1).unwrap();
        let e = Word::identity(&n1.pres);
        let f = y(&n1, 1, &[0]).mul(&y(&n1, 2, &[3]));
        assert_eq!(gpoly_apply(&e, &f).unwrap(), f);
        assert_eq!(gpoly_apply(&a, &y(&n1, 1, &[0])).unwrap(), y(&n1, 1, &[1]));

        let z3 = GRing::new(Arc::new(AbelianPresentation::new(0, vec![3]).unwrap()), 0);
        let a = Word::generator(&z3.pres, 1).unwrap();
        let f = y(&z3, 1, &[2]).mul(&y(&z3, 2, &[0]));
        assert_eq!(gpoly_apply(&a, &f).unwrap(), y(&z3, 1, &[0]).mul(&y(&z3, 2, &[1])));
        let other = Word::generator(&n1.pres, 1).unwrap();
        assert_eq!(gpoly_apply(&other, &f), Err(HopfError::PresentationMismatch));
    }

    #[test]
    fn ord_examples() {
        let r = GRing::new(Arc::new(AbelianPresentation::free(2)), 0);
        let f = y(&r, 1, &[1, 1]).mul(&y(&r, 1, &[2, 1]));
        assert_eq!(ord(&f).unwrap(), 3);
        assert_eq!(ord(&GPoly::constant(&r, int(5))).unwrap(), 0);
        assert_eq!(ord(&GPoly::zero(&r)), Err(HopfError::ZeroPolynomial));
    }

    #[test]
    fn determinant_relation_normal_form() {
        let r = GRing::new(Arc::new(AbelianPresentation::free(1)), 2);
        let e = Word::identity(&r.pres);
        let d = GPoly::ind(&r, Ind::d(&e));
        assert_eq!(det(&r, &e).mul(&d), GPoly::one(&r));
        // with D in play a product can lose its indeterminates
        let a = Word::generator(&r.pres, 1).unwrap();
        let (f1, f2) = (det(&r, &a), GPoly::ind(&r, Ind::d(&a)));
        assert_eq!(ord(&f1).unwrap(), 1);
        assert_eq!(ord(&f1.mul(&f2)).unwrap(), 0);
    }

    #[test]
    fn json_round_trip() {
        let r = GRing::new(Arc::new(AbelianPresentation::new(1, vec![2]).unwrap()), 2);
        let w = r.word(&[1, 1]).unwrap();
        let f = x(&r, 1, 2, &w).mul(&x(&r, 2, 2, &w)).add(&GPoly::ind(&r, Ind::d(&w)).scale(&int(3)));
        let j = serde_json::to_string(&gpoly_to_json(&f)).unwrap();
        assert!(j.contains("x[1][2]@[1,1]"));
        let back: Vec<TermJson> = serde_json::from_str(&j).unwrap();
        assert_eq!(gpoly_from_json(&r, &back).unwrap(), f);
        let bad = vec![TermJson { coeff: "1".into(), vars: BTreeMap::from([("y[1]@[0,2]".to_string(), 1)]) }];
        assert!(gpoly_from_json(&r, &bad).is_err());
    }
}
