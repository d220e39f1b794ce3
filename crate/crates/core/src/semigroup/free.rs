//! Finite free products of abelian presentations.
//!
//! A word is an alternating sequence of non-identity blocks, each block a
//! normal-form word in one factor. Factor ids are 1-based.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{multiply, AbelianPresentation, SemigroupError, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProductPresentation {
    factors: Vec<Arc<AbelianPresentation>>,
}

impl FreeProductPresentation {
    pub fn new(factors: Vec<Arc<AbelianPresentation>>) -> Self {
        FreeProductPresentation { factors }
    }

    pub fn factors(&self) -> &[Arc<AbelianPresentation>] {
        &self.factors
    }

    pub fn factor(&self, id: usize) -> Result<&Arc<AbelianPresentation>, SemigroupError> {
        id.checked_sub(1)
            .and_then(|k| self.factors.get(k))
            .ok_or(SemigroupError::UnknownFactor(id))
    }

    pub fn block(&self, factor: usize, exps: Vec<u32>) -> Result<FpBlock, SemigroupError> {
        let pres = self.factor(factor)?;
        Ok(FpBlock { factor, word: Word::from_exps(pres, exps)? })
    }

    /// All normalized words with at most `max_blocks` blocks whose block words
    /// have length at most `max_block_len`.
    pub fn words_up_to(&self, max_blocks: usize, max_block_len: usize) -> Vec<FreeProductWord> {
        let per_factor: Vec<Vec<Word>> = self
            .factors
            .iter()
            .map(|p| super::words_up_to(p, max_block_len).into_iter().filter(|w| !w.is_identity()).collect())
            .collect();
        let mut out = vec![FreeProductWord::identity()];
        let mut frontier = vec![FreeProductWord::identity()];
        for _ in 0..max_blocks {
            let mut next = Vec::new();
            for w in &frontier {
                let last = w.blocks.last().map(|b| b.factor);
                for (k, words) in per_factor.iter().enumerate() {
                    if last == Some(k + 1) {
                        continue;
                    }
                    for x in words {
                        let mut blocks = w.blocks.clone();
                        blocks.push(FpBlock { factor: k + 1, word: x.clone() });
                        next.push(FreeProductWord { blocks });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FpBlock {
    pub factor: usize,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct RawBlock {
    pub factor: usize,
    pub word: Vec<u32>,
}

/// Normal form: no identity blocks and no two adjacent blocks from the same
/// factor. The empty list is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FreeProductWord {
    blocks: Vec<FpBlock>,
}

impl FreeProductWord {
    pub fn identity() -> Self {
        FreeProductWord { blocks: Vec::new() }
    }

    /// Caller guarantees the blocks are already in normal form.
    pub(crate) fn from_blocks_unchecked(blocks: Vec<FpBlock>) -> Self {
        debug_assert!(FreeProductWord { blocks: blocks.clone() }.is_normal());
        FreeProductWord { blocks }
    }

    pub fn blocks(&self) -> &[FpBlock] {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Sum of the block lengths.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.word.len()).sum()
    }

    /// Same as `is_identity`.
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn from_raw(fpp: &FreeProductPresentation, raw: &[RawBlock]) -> Result<Self, SemigroupError> {
        let blocks = raw
            .iter()
            .map(|b| fpp.block(b.factor, b.word.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        fp_normalize(fpp, &blocks)
    }

    /// True if no block is the identity and adjacent factors differ.
    pub fn is_normal(&self) -> bool {
        self.blocks.iter().all(|b| !b.word.is_identity())
            && self.blocks.windows(2).all(|p| p[0].factor != p[1].factor)
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("[{}]{}", b.factor, b.word)).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Merge adjacent same-factor blocks and drop identities, cascading when a
/// merge produces the identity.
pub fn fp_normalize(fpp: &FreeProductPresentation, blocks: &[FpBlock]) -> Result<FreeProductWord, SemigroupError> {
    let mut stack: Vec<FpBlock> = Vec::with_capacity(blocks.len());
    for b in blocks {
        if fpp.factor(b.factor)? != b.word.presentation() {
            return Err(SemigroupError::PresentationMismatch);
        }
        if b.word.is_identity() {
            continue;
        }
        match stack.last_mut() {
            Some(top) if top.factor == b.factor => {
                let prod = multiply(&top.word, &b.word)?;
                if prod.is_identity() {
                    stack.pop();
                } else {
                    top.word = prod;
                }
            }
            _ => stack.push(b.clone()),
        }
    }
    Ok(FreeProductWord { blocks: stack })
}

/// Concatenate and normalize.
pub fn fp_multiply(
    fpp: &FreeProductPresentation,
    u: &FreeProductWord,
    v: &FreeProductWord,
) -> Result<FreeProductWord, SemigroupError> {
    let mut blocks = u.blocks.clone();
    blocks.extend(v.blocks.iter().cloned());
    fp_normalize(fpp, &blocks)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn fpp() -> FreeProductPresentation {
        FreeProductPresentation::new(vec![
            Arc::new(AbelianPresentation::free(1)),
            Arc::new(AbelianPresentation::new(0, vec![2]).unwrap()),
        ])
    }

    /// Every irreducible form reachable by applying the two rewrite rules in
    /// any order.
    fn exhaustive(blocks: Vec<(usize, Vec<u32>)>, f: &FreeProductPresentation) -> BTreeSet<Vec<(usize, Vec<u32>)>> {
        let mut out = BTreeSet::new();
        let mut reducible = false;
        for k in 0..blocks.len() {
            if blocks[k].1.iter().all(|&e| e == 0) {
                let mut b = blocks.clone();
                b.remove(k);
                out.extend(exhaustive(b, f));
                reducible = true;
            }
            if k + 1 < blocks.len() && blocks[k].0 == blocks[k + 1].0 {
                let pres = f.factor(blocks[k].0).unwrap();
                let merged: Vec<u32> = blocks[k]
                    .1
                    .iter()
                    .zip(&blocks[k + 1].1)
                    .enumerate()
                    .map(|(g, (a, b))| pres.modulus(g + 1).map_or(a + b, |n| (a + b) % n))
                    .collect();
                let mut b = blocks.clone();
                b[k].1 = merged;
                b.remove(k + 1);
                out.extend(exhaustive(b, f));
                reducible = true;
            }
        }
        if !reducible {
            out.insert(blocks);
        }
        out
    }

    fn as_raw(w: &FreeProductWord) -> Vec<(usize, Vec<u32>)> {
        w.blocks().iter().map(|b| (b.factor, b.word.exps().to_vec())).collect()
    }

    #[test]
    fn examples() {
        let f = fpp();
        let e1 = f.block(1, vec![0]).unwrap();
        let w2 = f.block(2, vec![1]).unwrap();
        assert_eq!(as_raw(&fp_normalize(&f, &[e1.clone(), w2.clone()]).unwrap()), vec![(2, vec![1])]);
        let u = f.block(1, vec![2]).unwrap();
        let v = f.block(1, vec![3]).unwrap();
        assert_eq!(as_raw(&fp_normalize(&f, &[u.clone(), v]).unwrap()), vec![(1, vec![5])]);
        assert!(matches!(f.block(3, vec![1]), Err(SemigroupError::UnknownFactor(3))));
    }

    #[test]
    fn cascade_against_exhaustive_rewriting() {
        let f = fpp();
        let input = vec![(1, vec![1]), (2, vec![1]), (2, vec![1]), (1, vec![0]), (1, vec![2])];
        let blocks: Vec<FpBlock> = input.iter().map(|(k, e)| f.block(*k, e.clone()).unwrap()).collect();
        let got = as_raw(&fp_normalize(&f, &blocks).unwrap());
        assert_eq!(got, vec![(1, vec![3])]);
        let all = exhaustive(input, &f);
        assert_eq!(all.len(), 1);
        assert_eq!(all.into_iter().next().unwrap(), got);

        let input = vec![(1, vec![1]), (2, vec![1]), (2, vec![0]), (1, vec![0])];
        let blocks: Vec<FpBlock> = input.iter().map(|(k, e)| f.block(*k, e.clone()).unwrap()).collect();
        let got = as_raw(&fp_normalize(&f, &blocks).unwrap());
        assert_eq!(exhaustive(input, &f).into_iter().collect::<Vec<_>>(), vec![got]);
    }

    #[test]
    fn enumeration_is_normal() {
        let f = fpp();
        let ws = f.words_up_to(3, 2);
        assert!(ws.iter().all(FreeProductWord::is_normal));
        // Block choices {a, a²} and {b}: 1 + 3 + 4 + 6.
        assert_eq!(ws.len(), 14);
    }

    #[test]
    fn json_round_trip() {
        let f = fpp();
        let raw: Vec<RawBlock> = serde_json::from_str(r#"[{"factor":1,"word":[2]},{"factor":2,"word":[1]}]"#).unwrap();
        let w = FreeProductWord::from_raw(&f, &raw).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"[{"factor":1,"word":[2]},{"factor":2,"word":[1]}]"#);
        assert_eq!(w.to_string(), "[1]a1^2 [2]a1");
    }
}
