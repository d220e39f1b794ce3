//! Words over ℕⁿ × ℤ/n₁ × … × ℤ/n_r, their finite free products, and the
//! fixed exchange schedule that sorts a product of two normal forms.
//!
//! Generators are indexed `1..=m`, free generators first. Only positive powers
//! exist.

mod free;
mod schedule;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use free::{fp_multiply, fp_normalize, FpBlock, FreeProductPresentation, FreeProductWord, RawBlock};
pub use schedule::{apply_schedule, exchange_schedule, ExchangeStep, StepKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("words belong to different presentations")]
    PresentationMismatch,
    #[error("torsion modulus must be at least 1")]
    InvalidModulus,
    #[error("exponent vector {0:?} is not reduced for this presentation")]
    InvalidExponents(Vec<u32>),
    #[error("unknown free-product factor {0}")]
    UnknownFactor(usize),
    #[error("schedule step {step} does not apply: {reason}")]
    BadStep { step: usize, reason: String },
}

/// `ℕ^free × ℤ/torsion[0] × …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr", into = "PresentationRepr")]
pub struct AbelianPresentation {
    free: usize,
    torsion: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    free: usize,
    #[serde(default)]
    torsion: Vec<u32>,
}

impl TryFrom<PresentationRepr> for AbelianPresentation {
    type Error = SemigroupError;
    fn try_from(r: PresentationRepr) -> Result<Self, Self::Error> {
        AbelianPresentation::new(r.free, r.torsion)
    }
}

impl From<AbelianPresentation> for PresentationRepr {
    fn from(p: AbelianPresentation) -> Self {
        PresentationRepr { free: p.free, torsion: p.torsion }
    }
}

impl AbelianPresentation {
    pub fn new(free: usize, torsion: Vec<u32>) -> Result<Self, SemigroupError> {
        if torsion.contains(&0) {
            return Err(SemigroupError::InvalidModulus);
        }
        Ok(AbelianPresentation { free, torsion })
    }

    pub fn free(n: usize) -> Self {
        AbelianPresentation { free: n, torsion: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free
    }

    pub fn torsion_moduli(&self) -> &[u32] {
        &self.torsion
    }

    /// Number of generators.
    pub fn num_generators(&self) -> usize {
        self.free + self.torsion.len()
    }

    /// Order of generator `i` (1-based), `None` for free generators.
    pub fn modulus(&self, i: usize) -> Option<u32> {
        if i > self.free {
            self.torsion.get(i - self.free - 1).copied()
        } else {
            None
        }
    }

    pub fn is_torsion(&self, i: usize) -> bool {
        self.modulus(i).is_some()
    }

    pub fn check_index(&self, i: usize) -> Result<(), SemigroupError> {
        let m = self.num_generators();
        if i == 0 || i > m {
            Err(SemigroupError::IndexOutOfRange { index: i, m })
        } else {
            Ok(())
        }
    }

    fn reduce(&self, i: usize, e: u64) -> u32 {
        match self.modulus(i) {
            Some(n) => (e % u64::from(n)) as u32,
            None => u32::try_from(e).expect("exponent overflow"),
        }
    }
}

impl fmt::Display for AbelianPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free > 0 {
            parts.push(if self.free == 1 { "N".to_string() } else { format!("N^{}", self.free) });
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z/{n}")));
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Element of an abelian presentation in normal form `a₁^{d₁}⋯a_m^{d_m}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pres: Arc<AbelianPresentation>,
    exps: Vec<u32>,
}

impl Word {
    pub fn identity(pres: &Arc<AbelianPresentation>) -> Self {
        Word { pres: pres.clone(), exps: vec![0; pres.num_generators()] }
    }

    /// Checks that the vector is already reduced.
    pub fn from_exps(pres: &Arc<AbelianPresentation>, exps: Vec<u32>) -> Result<Self, SemigroupError> {
        if exps.len() != pres.num_generators()
            || exps.iter().enumerate().any(|(k, &e)| pres.modulus(k + 1).is_some_and(|n| e >= n))
        {
            return Err(SemigroupError::InvalidExponents(exps));
        }
        Ok(Word { pres: pres.clone(), exps })
    }

    /// Single generator `a_i`.
    pub fn generator(pres: &Arc<AbelianPresentation>, i: usize) -> Result<Self, SemigroupError> {
        normalize_word(pres, &[i])
    }

    pub fn presentation(&self) -> &Arc<AbelianPresentation> {
        &self.pres
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        word_length(self)
    }

    /// Same as `is_identity`.
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// The normal-form generator string, e.g. `(2,1)` ↦ `[1,1,2]`.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for (k, &e) in self.exps.iter().enumerate() {
            out.extend(std::iter::repeat_n(k + 1, e as usize));
        }
        out
    }

    pub fn mul(&self, other: &Word) -> Result<Word, SemigroupError> {
        multiply(self, other)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.exps)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { format!("a{}", k + 1) } else { format!("a{}^{e}", k + 1) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.exps.serialize(s)
    }
}

/// Count occurrences of each generator and reduce torsion exponents.
pub fn normalize_word(pres: &Arc<AbelianPresentation>, raw: &[usize]) -> Result<Word, SemigroupError> {
    let mut counts = vec![0u64; pres.num_generators()];
    for &i in raw {
        pres.check_index(i)?;
        counts[i - 1] += 1;
    }
    let exps = counts.iter().enumerate().map(|(k, &c)| pres.reduce(k + 1, c)).collect();
    Ok(Word { pres: pres.clone(), exps })
}

pub fn multiply(w1: &Word, w2: &Word) -> Result<Word, SemigroupError> {
    if w1.pres != w2.pres {
        return Err(SemigroupError::PresentationMismatch);
    }
    let exps = w1
        .exps
        .iter()
        .zip(&w2.exps)
        .enumerate()
        .map(|(k, (&a, &b))| w1.pres.reduce(k + 1, u64::from(a) + u64::from(b)))
        .collect();
    Ok(Word { pres: w1.pres.clone(), exps })
}

/// Length of a shortest presentation: with only positive powers available the
/// normal form is already shortest.
pub fn word_length(w: &Word) -> usize {
    w.exps.iter().map(|&e| e as usize).sum()
}

/// All words whose exponents are each at most `max_exp` (and reduced), with
/// total length at most `max_len`. Ordered by length, then lexicographically.
pub fn words_up_to(pres: &Arc<AbelianPresentation>, max_len: usize) -> Vec<Word> {
    let m = pres.num_generators();
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(
        pres: &Arc<AbelianPresentation>,
        k: usize,
        budget: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Word>,
    ) {
        if k == cur.len() {
            out.push(Word { pres: pres.clone(), exps: cur.clone() });
            return;
        }
        let cap = pres.modulus(k + 1).map_or(budget, |n| budget.min(n as usize - 1));
        for e in 0..=cap {
            cur[k] = e as u32;
            rec(pres, k + 1, budget - e, cur, out);
        }
        cur[k] = 0;
    }
    rec(pres, 0, max_len, &mut cur, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.exps.cmp(&b.exps)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(free: usize, torsion: &[u32]) -> Arc<AbelianPresentation> {
        Arc::new(AbelianPresentation::new(free, torsion.to_vec()).unwrap())
    }

    #[test]
    fn normalize_examples() {
        let n2 = p(2, &[]);
        assert_eq!(normalize_word(&n2, &[]).unwrap().exps(), &[0, 0]);
        assert_eq!(normalize_word(&n2, &[1, 2, 1]).unwrap().exps(), &[2, 1]);
        let z3 = p(0, &[3]);
        assert_eq!(normalize_word(&z3, &[1, 1, 1, 1]).unwrap().exps(), &[1]);
        assert_eq!(
            normalize_word(&n2, &[3]),
            Err(SemigroupError::IndexOutOfRange { index: 3, m: 2 })
        );
        assert!(normalize_word(&n2, &[0]).is_err());
    }

    #[test]
    fn multiply_examples() {
        let n2 = p(2, &[]);
        let a = Word::from_exps(&n2, vec![1, 0]).unwrap();
        let b = Word::from_exps(&n2, vec![0, 1]).unwrap();
        assert_eq!(multiply(&a, &b).unwrap().exps(), &[1, 1]);
        assert_eq!(multiply(&a, &Word::identity(&n2)).unwrap(), a);
        let z3 = p(0, &[3]);
        let two = Word::from_exps(&z3, vec![2]).unwrap();
        assert_eq!(multiply(&two, &two).unwrap().exps(), &[1]);
        assert_eq!(multiply(&a, &two), Err(SemigroupError::PresentationMismatch));
    }

    #[test]
    fn length_examples() {
        let n2 = p(2, &[]);
        assert_eq!(word_length(&Word::from_exps(&n2, vec![2, 1]).unwrap()), 3);
        assert_eq!(word_length(&Word::identity(&n2)), 0);
    }

    #[test]
    fn torsion_length_by_brute_force() {
        // Shortest generator string evaluating to a² in ℤ/3.
        let z3 = p(0, &[3]);
        let target = Word::from_exps(&z3, vec![2]).unwrap();
        let shortest = (0..=4)
            .find(|&len| normalize_word(&z3, &vec![1; len]).unwrap() == target)
            .unwrap();
        assert_eq!(shortest, 2);
        assert_eq!(word_length(&target), shortest);
    }

    #[test]
    fn presentation_validation_and_json() {
        assert_eq!(AbelianPresentation::new(1, vec![0]), Err(SemigroupError::InvalidModulus));
        let pr: AbelianPresentation = serde_json::from_str(r#"{"free":1,"torsion":[2]}"#).unwrap();
        assert_eq!(pr.num_generators(), 2);
        assert_eq!(pr.modulus(2), Some(2));
        assert_eq!(pr.modulus(1), None);
        assert_eq!(pr.to_string(), "N x Z/2");
        assert!(serde_json::from_str::<AbelianPresentation>(r#"{"free":0,"torsion":[0]}"#).is_err());
        let w = Word::from_exps(&Arc::new(pr), vec![3, 1]).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "[3,1]");
        assert_eq!(w.letters(), vec![1, 1, 1, 2]);
        assert_eq!(w.to_string(), "a1^3*a2");
    }

    #[test]
    fn unreduced_exponents_rejected() {
        let z2 = p(1, &[2]);
        assert!(Word::from_exps(&z2, vec![5, 2]).is_err());
        assert!(Word::from_exps(&z2, vec![5]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // ℕ² words of length ≤ 2: e, a1, a2, a1², a1a2, a2².
        assert_eq!(words_up_to(&p(2, &[]), 2).len(), 6);
        // ℕ × ℤ/2, length ≤ 2: e, a1, a2, a1², a1a2.
        assert_eq!(words_up_to(&p(1, &[2]), 2).len(), 5);
    }
}
