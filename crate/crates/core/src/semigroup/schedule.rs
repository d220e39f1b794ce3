//! The fixed sequence of adjacent exchanges turning `w₁ ++ w₂` into the
//! normal form of `w₁·w₂`.

use serde::{Deserialize, Serialize};

use super::{SemigroupError, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    /// Letters `a_i a_j` (with `i > j`) become `a_j a_i`.
    Swap { i: usize, j: usize },
    /// Two runs of `a_j` meet. No change to the string.
    Merge { j: usize },
    /// `n_j` consecutive copies of `a_j` are deleted.
    TorsionReduce { j: usize },
}

/// A step together with the string position it acts on.
///
/// For a swap, `position` is the index of the left letter of the pair; for
/// merge and torsion reduction it is the first letter of the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExchangeStep {
    #[serde(flatten)]
    pub kind: StepKind,
    pub position: usize,
}

/// Moves `a_m^{s_m}` right past the lower-index letters of `w₂`, merges it with
/// `a_m^{q_m}`, then does the same for `a_{m-1}^{s_{m-1}}` and so on down.
///
/// Each lower-index letter is bubbled leftward through the moving block one
/// transposition at a time. A torsion run is reduced as soon as it is merged.
pub fn exchange_schedule(w1: &Word, w2: &Word) -> Result<Vec<ExchangeStep>, SemigroupError> {
    if w1.pres != w2.pres {
        return Err(SemigroupError::PresentationMismatch);
    }
    let pres = &w1.pres;
    let s = &w1.exps;
    let q = &w2.exps;
    let m = pres.num_generators();
    let mut steps = Vec::new();
    for k in (1..=m).rev() {
        let sk = s[k - 1] as usize;
        if sk == 0 {
            continue;
        }
        let start: usize = s[..k - 1].iter().map(|&e| e as usize).sum();
        let mut shift = 0;
        for (l, &ql) in q[..k - 1].iter().enumerate() {
            for _ in 0..ql {
                // the letter sits just right of the block [start+shift, start+shift+sk)
                for pos in (start + shift..start + shift + sk).rev() {
                    steps.push(ExchangeStep { kind: StepKind::Swap { i: k, j: l + 1 }, position: pos });
                }
                shift += 1;
            }
        }
        let run = start + shift;
        let qk = q[k - 1] as usize;
        if qk > 0 {
            steps.push(ExchangeStep { kind: StepKind::Merge { j: k }, position: run });
            if let Some(n) = pres.modulus(k) {
                if sk + qk >= n as usize {
                    steps.push(ExchangeStep { kind: StepKind::TorsionReduce { j: k }, position: run });
                }
            }
        }
    }
    Ok(steps)
}

/// Replays a schedule as string rewriting, checking each step against the
/// letters it claims to act on.
pub fn apply_schedule(
    pres: &super::AbelianPresentation,
    letters: &[usize],
    steps: &[ExchangeStep],
) -> Result<Vec<usize>, SemigroupError> {
    let mut st = letters.to_vec();
    for (n, step) in steps.iter().enumerate() {
        let bad = |reason: String| SemigroupError::BadStep { step: n, reason };
        let p = step.position;
        match step.kind {
            StepKind::Swap { i, j } => {
                if i <= j {
                    return Err(bad(format!("swap({i},{j}) needs i > j")));
                }
                if st.get(p) != Some(&i) || st.get(p + 1) != Some(&j) {
                    return Err(bad(format!("expected a{i} a{j} at {p}")));
                }
                st.swap(p, p + 1);
            }
            StepKind::Merge { j } => {
                if st.get(p) != Some(&j) {
                    return Err(bad(format!("no run of a{j} at {p}")));
                }
            }
            StepKind::TorsionReduce { j } => {
                let nj = pres.modulus(j).ok_or_else(|| bad(format!("a{j} is not a torsion generator")))? as usize;
                if p + nj > st.len() || st[p..p + nj].iter().any(|&x| x != j) {
                    return Err(bad(format!("fewer than {nj} copies of a{j} at {p}")));
                }
                st.drain(p..p + nj);
            }
        }
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::{multiply, words_up_to, AbelianPresentation};
    use super::*;

    fn w(p: &Arc<AbelianPresentation>, e: &[u32]) -> Word {
        Word::from_exps(p, e.to_vec()).unwrap()
    }

    fn swaps(steps: &[ExchangeStep]) -> Vec<(usize, usize)> {
        steps
            .iter()
            .filter_map(|s| match s.kind {
                StepKind::Swap { i, j } => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn single_transposition() {
        let n2 = Arc::new(AbelianPresentation::free(2));
        let st = exchange_schedule(&w(&n2, &[0, 1]), &w(&n2, &[1, 0])).unwrap();
        assert_eq!(st, vec![ExchangeStep { kind: StepKind::Swap { i: 2, j: 1 }, position: 0 }]);
        assert!(exchange_schedule(&Word::identity(&n2), &w(&n2, &[3, 2])).unwrap().is_empty());
    }

    #[test]
    fn swap_count_is_inversion_count() {
        let n2 = Arc::new(AbelianPresentation::free(2));
        let st = exchange_schedule(&w(&n2, &[1, 1]), &w(&n2, &[1, 1])).unwrap();
        assert_eq!(swaps(&st), vec![(2, 1)]);

        // Oracle: inversions between the two sorted strings are pairs (x in w1, y in w2) with x > y.
        let n3 = Arc::new(AbelianPresentation::new(2, vec![3]).unwrap());
        for a in words_up_to(&n3, 3) {
            for b in words_up_to(&n3, 3) {
                let inv: usize = a
                    .letters()
                    .iter()
                    .map(|&x| b.letters().iter().filter(|&&y| x > y).count())
                    .sum();
                assert_eq!(swaps(&exchange_schedule(&a, &b).unwrap()).len(), inv);
            }
        }
    }

    #[test]
    fn torsion_reduction_fires_on_overflow() {
        let z3 = Arc::new(AbelianPresentation::new(1, vec![3]).unwrap());
        let st = exchange_schedule(&w(&z3, &[0, 2]), &w(&z3, &[1, 2])).unwrap();
        let kinds: Vec<StepKind> = st.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            vec![
                StepKind::Swap { i: 2, j: 1 },
                StepKind::Swap { i: 2, j: 1 },
                StepKind::Merge { j: 2 },
                StepKind::TorsionReduce { j: 2 },
            ]
        );
        let out = apply_schedule(&z3, &[2, 2, 1, 2, 2], &st).unwrap();
        assert_eq!(out, vec![1, 2]);
    }

    #[test]
    fn replay_rejects_wrong_string() {
        let n2 = Arc::new(AbelianPresentation::free(2));
        let st = exchange_schedule(&w(&n2, &[0, 1]), &w(&n2, &[1, 0])).unwrap();
        assert!(apply_schedule(&n2, &[1, 2], &st).is_err());
    }

    #[test]
    fn replay_produces_normal_form_exhaustively() {
        for pres in [
            AbelianPresentation::free(3),
            AbelianPresentation::new(1, vec![2]).unwrap(),
            AbelianPresentation::new(0, vec![2, 3]).unwrap(),
        ] {
            let pres = Arc::new(pres);
            for a in words_up_to(&pres, 3) {
                for b in words_up_to(&pres, 3) {
                    let st = exchange_schedule(&a, &b).unwrap();
                    let mut input = a.letters();
                    input.extend(b.letters());
                    let out = apply_schedule(&pres, &input, &st).unwrap();
                    assert_eq!(out, multiply(&a, &b).unwrap().letters(), "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn step_json_shape() {
        let s = ExchangeStep { kind: StepKind::Swap { i: 2, j: 1 }, position: 4 };
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"swap","i":2,"j":1,"position":4}"#);
        let back: ExchangeStep = serde_json::from_str(r#"{"kind":"torsion_reduce","j":3,"position":0}"#).unwrap();
        assert_eq!(back.kind, StepKind::TorsionReduce { j: 3 });
    }
}
