use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use tannakit::hopf::{
    antipode, comodule_axioms, comultiply, counit, gpoly_apply, ord, random_element, standard_comodule, tensor,
    twist_comodule, x, GPoly, GRing, Ind, Sym,
};
use tannakit::semigroup::{word_length, words_up_to, AbelianPresentation, Word};

fn ring(shape: usize) -> Arc<GRing> {
    let pres = match shape {
        0 => AbelianPresentation::free(1),
        1 => AbelianPresentation::new(1, vec![2]).unwrap(),
        _ => AbelianPresentation::free(2),
    };
    GRing::new(Arc::new(pres), 2)
}

struct Sample {
    ring: Arc<GRing>,
    words: Vec<Word>,
    rng: StdRng,
}

impl Sample {
    fn new(shape: usize, seed: u64) -> Self {
        let ring = ring(shape);
        let words = words_up_to(&ring.pres, 2);
        Sample { ring, words, rng: StdRng::seed_from_u64(seed) }
    }

    fn element(&mut self, with_d: bool) -> GPoly {
        random_element(&mut self.rng, &self.ring, &self.words, 2, with_d)
    }

    fn word(&mut self) -> Word {
        use rand::seq::SliceRandom;
        self.words.choose(&mut self.rng).unwrap().clone()
    }
}

/// `Δ` written out on generators: `x_{ij} ↦ Σ_k x_{ik} ⊗ x_{kj}`,
/// `D ↦ D ⊗ D`.
fn delta_by_hand(f: &GPoly) -> GPoly {
    let ring = f.ring().clone();
    f.substitute(&ring, |ind| {
        let right = |i: Ind| GPoly::ind(&ring, i.on_side(1));
        let w = ring.word(&ind.word)?;
        Ok(match ind.sym {
            Sym::X(i, j) => (1..=ring.n)
                .fold(GPoly::zero(&ring), |acc, k| acc.add(&x(&ring, i, k, &w).mul(&right(Ind::x(k, j, &w))))),
            Sym::D => GPoly::ind(&ring, ind.clone()).mul(&right(ind.clone())),
            _ => GPoly::ind(&ring, ind.clone()),
        })
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_a_ring_homomorphism(seed in any::<u64>(), shape in 0usize..3) {
        let mut s = Sample::new(shape, seed);
        let (f, g, h, k) = (s.element(true), s.element(true), s.word(), s.word());
        prop_assert_eq!(gpoly_apply(&h, &f.mul(&g)).unwrap(), gpoly_apply(&h, &f).unwrap().mul(&gpoly_apply(&h, &g).unwrap()));
        prop_assert_eq!(gpoly_apply(&h, &f.add(&g)).unwrap(), gpoly_apply(&h, &f).unwrap().add(&gpoly_apply(&h, &g).unwrap()));
        let hk = h.mul(&k).unwrap();
        prop_assert_eq!(gpoly_apply(&hk, &f).unwrap(), gpoly_apply(&h, &gpoly_apply(&k, &f).unwrap()).unwrap());
        prop_assert_eq!(gpoly_apply(&Word::identity(&s.ring.pres), &f).unwrap(), f);
    }

    #[test]
    fn hopf_maps_commute_with_the_action(seed in any::<u64>(), shape in 0usize..3) {
        let mut s = Sample::new(shape, seed);
        let (f, h) = (s.element(true), s.word());
        let hf = gpoly_apply(&h, &f).unwrap();
        prop_assert_eq!(comultiply(&hf).unwrap(), gpoly_apply(&h, &comultiply(&f).unwrap()).unwrap());
        prop_assert_eq!(counit(&hf).unwrap(), counit(&f).unwrap());
        prop_assert_eq!(antipode(&hf).unwrap(), gpoly_apply(&h, &antipode(&f).unwrap()).unwrap());
    }

    #[test]
    fn comultiplication_is_multiplicative(seed in any::<u64>(), shape in 0usize..3) {
        let mut s = Sample::new(shape, seed);
        let (f, g) = (s.element(true), s.element(true));
        prop_assert_eq!(comultiply(&f.mul(&g)).unwrap(), comultiply(&f).unwrap().mul(&comultiply(&g).unwrap()));
        prop_assert_eq!(comultiply(&f).unwrap(), delta_by_hand(&f));
    }

    #[test]
    fn ord_bounds(seed in any::<u64>(), shape in 0usize..3) {
        let mut s = Sample::new(shape, seed);
        let (f, g, h) = (s.element(false), s.element(false), s.word());
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (of, og) = (ord(&f).unwrap(), ord(&g).unwrap());
        prop_assert_eq!(ord(&f.mul(&g)).unwrap(), of.max(og));
        prop_assert!(ord(&gpoly_apply(&h, &f).unwrap()).unwrap() <= of + word_length(&h));
    }

    #[test]
    fn twisting_preserves_comodules(seed in any::<u64>(), shape in 0usize..3) {
        let mut s = Sample::new(shape, seed);
        let (w, w2, g) = (s.word(), s.word(), s.word());
        let v = standard_comodule(&s.ring, &w);
        let vv = tensor(&v, &standard_comodule(&s.ring, &w2)).unwrap();
        for c in [v, vv] {
            let t = twist_comodule(&c, &g).unwrap();
            prop_assert!(comodule_axioms(&t).unwrap().passed());
        }
    }
}
