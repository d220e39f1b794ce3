use std::collections::HashMap;
use std::sync::Arc;

use serde_json::json;

use crate::semigroup::{fp_multiply, FreeProductPresentation, FreeProductWord, Word};

use super::action::ActionData;
use super::category::{BlockFunctor, EvalCategory, Table};
use super::natiso::{first_difference, NatIso};
use super::report::{Failure, Report};
use super::CoherenceError;

/// An action of a free product `G₁ * … * G_k` assembled from one action per
/// factor. Letters are global: factor `k`'s generator `i` is
/// `offset_k + i`.
#[derive(Clone, Debug)]
pub struct FreeProductAction {
    fpp: FreeProductPresentation,
    parts: Vec<ActionData>,
    offsets: Vec<usize>,
    table: Vec<BlockFunctor>,
}

/// Combine per-factor actions over the same category.
pub fn combine_free_product(parts: Vec<ActionData>) -> Result<FreeProductAction, CoherenceError> {
    let first = parts.first().ok_or_else(|| CoherenceError::Invalid("no factors".into()))?;
    let cat = first.category().clone();
    if parts.iter().any(|p| p.category() != &cat) {
        return Err(CoherenceError::Invalid("factors act on different categories".into()));
    }
    let fpp = FreeProductPresentation::new(parts.iter().map(|p| p.presentation().clone()).collect());
    let mut offsets = Vec::new();
    let mut table = Vec::new();
    for p in &parts {
        offsets.push(table.len());
        table.extend(p.functors().iter().cloned());
    }
    Ok(FreeProductAction { fpp, parts, offsets, table })
}

impl FreeProductAction {
    pub fn presentation(&self) -> &FreeProductPresentation {
        &self.fpp
    }

    pub fn category(&self) -> &Arc<EvalCategory> {
        self.parts[0].category()
    }

    pub fn parts(&self) -> &[ActionData] {
        &self.parts
    }

    pub fn table(&self) -> Table<'_> {
        Table(&self.table)
    }

    pub fn letters(&self, w: &FreeProductWord) -> Vec<usize> {
        w.blocks()
            .iter()
            .flat_map(|b| {
                let off = self.offsets[b.factor - 1];
                b.word.letters().into_iter().map(move |l| l + off)
            })
            .collect()
    }

    fn identity_on(&self, letters: Vec<usize>) -> NatIso {
        let pad = self.table().pad(&letters);
        NatIso::identity(self.category().vars(), letters, pad)
    }

    /// `c_{f,g}`: the identity when the boundary blocks come from different
    /// factors; otherwise the factor's `c` on the boundary blocks, whiskered
    /// by the rest. If the boundary blocks multiply to `e`, the new boundary
    /// is handled the same way.
    pub fn c(&self, f: &FreeProductWord, g: &FreeProductWord) -> Result<NatIso, CoherenceError> {
        let (fb, gb) = (f.blocks(), g.blocks());
        let (Some(last), Some(first)) = (fb.last(), gb.first()) else {
            let mut l = self.letters(f);
            l.extend(self.letters(g));
            return Ok(self.identity_on(l));
        };
        if last.factor != first.factor {
            let mut l = self.letters(f);
            l.extend(self.letters(g));
            return Ok(self.identity_on(l));
        }
        let k = last.factor - 1;
        let off = self.offsets[k];
        let inner = self.parts[k].extend_iso(&last.word, &first.word)?.relabel(|l| l + off);
        let f_rest = FreeProductWord::from_blocks_unchecked(fb[..fb.len() - 1].to_vec());
        let g_rest = FreeProductWord::from_blocks_unchecked(gb[1..].to_vec());
        let step = inner
            .whisker_right(self.table(), &self.letters(&g_rest))?
            .whisker_left(self.table(), &self.letters(&f_rest))?;
        if !last.word.mul(&first.word)?.is_identity() {
            return Ok(step);
        }
        step.then(&self.c(&f_rest, &g_rest)?)
    }

    /// Recover each factor's data: `i_{a_i,a_j} = c_{a_j,a_i}⁻¹∘c_{a_i,a_j}`
    /// and `I_j = c_{a,a^{n−1}}∘…∘c_{a,a}`.
    ///
    /// A torsion generator of order 1 is the identity element, so its `I` is
    /// not visible through `c` and comes back as the identity.
    pub fn restrict(&self) -> Result<Vec<ActionData>, CoherenceError> {
        let mut out = Vec::new();
        for (k, part) in self.parts.iter().enumerate() {
            let off = self.offsets[k];
            let pres = part.presentation();
            let gen = |i: usize| -> Result<FreeProductWord, CoherenceError> {
                let w = Word::generator(pres, i)?;
                Ok(crate::semigroup::fp_normalize(
                    &self.fpp,
                    &[crate::semigroup::FpBlock { factor: k + 1, word: w }],
                )?)
            };
            let mut d = ActionData::new(part.category().clone(), pres.clone(), part.functors().to_vec())?;
            let m = pres.num_generators();
            for i in 1..=m {
                for j in 1..i {
                    let (ai, aj) = (gen(i)?, gen(j)?);
                    let iso = self.c(&ai, &aj)?.then(&self.c(&aj, &ai)?.inverse()?)?;
                    let iso = iso.relabel(|l| l - off);
                    d.set_exchange(i, j, iso.pad, iso.scalar)?;
                }
            }
            for j in 1..=pres.torsion_moduli().len() {
                let g = pres.free_rank() + j;
                let n = pres.modulus(g).unwrap() as usize;
                if n < 2 {
                    continue;
                }
                let a = gen(g)?;
                let mut acc = self.identity_on(vec![off + g; n]);
                let mut power = a.clone();
                for p in 1..n {
                    // c_{a,a^p} acting on the last p+1 letters
                    let step = self.c(&a, &power)?.whisker_left(self.table(), &vec![off + g; n - p - 1])?;
                    acc = acc.then(&step)?;
                    power = fp_multiply(&self.fpp, &a, &power)?;
                }
                d.set_torsion(j, acc.scalar.clone())?;
                if acc.pad_dim() != 0 || !acc.tgt.is_empty() {
                    return Err(CoherenceError::Shape("torsion composite did not reach the identity".into()));
                }
            }
            out.push(d);
        }
        Ok(out)
    }

    /// Associativity of `c` over all triples of normalized words with block
    /// words of length at most `max_block_len` and at most `max_blocks` blocks
    /// in total across the triple.
    pub fn verify_associativity(&self, max_blocks: usize, max_block_len: usize) -> Result<Report, CoherenceError> {
        let words = self.fpp.words_up_to(max_blocks, max_block_len);
        let mut memo: HashMap<(FreeProductWord, FreeProductWord), NatIso> = HashMap::new();
        let mut c = |f: &FreeProductWord, g: &FreeProductWord| -> Result<NatIso, CoherenceError> {
            if let Some(v) = memo.get(&(f.clone(), g.clone())) {
                return Ok(v.clone());
            }
            let v = self.c(f, g)?;
            memo.insert((f.clone(), g.clone()), v.clone());
            Ok(v)
        };
        let mut rep = Report::new("free-product-associativity");
        for f in &words {
            for g in &words {
                for h in &words {
                    if f.num_blocks() + g.num_blocks() + h.num_blocks() > max_blocks {
                        continue;
                    }
                    rep.checked += 1;
                    let fg = fp_multiply(&self.fpp, f, g)?;
                    let gh = fp_multiply(&self.fpp, g, h)?;
                    let lhs = c(f, g)?.whisker_right(self.table(), &self.letters(h))?.then(&c(&fg, h)?)?;
                    let rhs = c(g, h)?.whisker_left(self.table(), &self.letters(f))?.then(&c(f, &gh)?)?;
                    if let Some((obj, res)) = first_difference(self.category(), &lhs, &rhs)? {
                        rep.failures.push(Failure::new(
                            json!({ "f": f, "g": g, "h": h }),
                            self.category(),
                            obj,
                            &res,
                        ));
                    }
                }
            }
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::*;
    use crate::coherence::random::{random_category, random_valid_action, IsoKind, RandomSpec};
    use crate::field::{parse_ratfunc, SubstEndo, Vars};
    use crate::semigroup::{AbelianPresentation, RawBlock};

    fn two_factors(seed: u64) -> (ActionData, ActionData) {
        let mut rng = StdRng::seed_from_u64(seed);
        let cat = Arc::new(random_category(&mut rng, true));
        let spec = |p: AbelianPresentation, kind| RandomSpec { presentation: Arc::new(p), kind, max_pad: 1, transport: true };
        let d1 = random_valid_action(&mut rng, cat.clone(), &spec(AbelianPresentation::free(2), IsoKind::PadSwap)).unwrap();
        let d2 = random_valid_action(&mut rng, cat, &spec(AbelianPresentation::new(0, vec![2]).unwrap(), IsoKind::Identity)).unwrap();
        (d1, d2)
    }

    fn word(fp: &FreeProductAction, raw: &str) -> FreeProductWord {
        let raw: Vec<RawBlock> = serde_json::from_str(raw).unwrap();
        FreeProductWord::from_raw(fp.presentation(), &raw).unwrap()
    }

    #[test]
    fn restriction_recovers_factors() {
        for seed in 0..4 {
            let (d1, d2) = two_factors(seed);
            let fp = combine_free_product(vec![d1.clone(), d2.clone()]).unwrap();
            assert_eq!(fp.restrict().unwrap(), vec![d1, d2]);
        }
    }

    #[test]
    fn boundary_cases() {
        let (d1, d2) = two_factors(11);
        let fp = combine_free_product(vec![d1.clone(), d2]).unwrap();
        // different factors at the seam
        let f = word(&fp, r#"[{"factor":1,"word":[1,0]},{"factor":2,"word":[1]}]"#);
        let g = word(&fp, r#"[{"factor":1,"word":[0,1]}]"#);
        assert!(fp.c(&f, &g).unwrap().is_identity());
        // same factor at the seam: the factor's c, whiskered
        let f = word(&fp, r#"[{"factor":2,"word":[1]},{"factor":1,"word":[0,1]}]"#);
        let g = word(&fp, r#"[{"factor":1,"word":[1,0]},{"factor":2,"word":[1]}]"#);
        let c = fp.c(&f, &g).unwrap();
        let expected = d1
            .exchange(2, 1)
            .unwrap()
            .relabel(|l| l)
            .whisker_right(fp.table(), &[3])
            .unwrap()
            .whisker_left(fp.table(), &[3])
            .unwrap();
        assert_eq!(c, expected);
        assert_eq!(c.src, vec![3, 2, 1, 3]);
        assert_eq!(c.tgt, vec![3, 1, 2, 3]);
    }

    #[test]
    fn cancelling_seam_cascades() {
        // Z/2 twisted by t -> -t with I = t^2, next to a free factor.
        let v = Vars::new(["t"]);
        let cat = Arc::new(EvalCategory::with_dims(&v, &[1]).unwrap());
        let sigma = SubstEndo::with_images(&v, [("t", parse_ratfunc("-t", &v).unwrap())]).unwrap();
        let mut z2 = ActionData::new(cat.clone(), Arc::new(AbelianPresentation::new(0, vec![2]).unwrap()), vec![BlockFunctor::twisted(0, sigma)]).unwrap();
        z2.set_torsion(1, parse_ratfunc("t^2", &v).unwrap()).unwrap();
        let n = ActionData::new(cat, Arc::new(AbelianPresentation::free(1)), vec![BlockFunctor::pad(1)]).unwrap();
        let fp = combine_free_product(vec![n, z2]).unwrap();
        let f = word(&fp, r#"[{"factor":1,"word":[1]},{"factor":2,"word":[1]}]"#);
        let g = word(&fp, r#"[{"factor":2,"word":[1]},{"factor":1,"word":[1]}]"#);
        let c = fp.c(&f, &g).unwrap();
        assert_eq!(c.src, vec![1, 2, 2, 1]);
        assert_eq!(c.tgt, vec![1, 1]);
        // I whiskered by the pad-1 functor on the left: id ⊕ t^2 on the X part
        assert_eq!(c.scalar, parse_ratfunc("t^2", &v).unwrap());
        assert!(fp.verify_associativity(4, 2).unwrap().passed());
    }

    #[test]
    fn free_product_associativity() {
        let (d1, d2) = two_factors(3);
        let fp = combine_free_product(vec![d1, d2]).unwrap();
        let rep = fp.verify_associativity(4, 2).unwrap();
        assert!(rep.checked > 1000, "{}", rep.checked);
        assert!(rep.passed());
    }
}
