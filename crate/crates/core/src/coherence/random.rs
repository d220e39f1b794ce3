//! Random action data that satisfies the hexagon and torsion conditions by
//! construction: a strictly coherent base (identity, scalar or pad-swap
//! exchanges) transported along random automorphisms of the generators.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::{parse_ratfunc, rational::rat, RatFunc, RfMatrix, SubstEndo, Vars};
use crate::semigroup::AbelianPresentation;

use super::action::ActionData;
use super::category::{BlockFunctor, EvalCategory, GenMorphism, Object};
use super::natiso::NatIso;
use super::CoherenceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoKind {
    Identity,
    Scalar,
    PadSwap,
}

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub presentation: Arc<AbelianPresentation>,
    pub kind: IsoKind,
    pub max_pad: usize,
    /// Conjugate by random block-diagonal automorphisms.
    pub transport: bool,
}

fn small_rational<R: Rng>(rng: &mut R, vars: &Vars, nonzero: bool) -> RatFunc {
    let choices: &[(i64, i64)] = if nonzero {
        &[(1, 1), (2, 1), (-1, 1), (1, 2), (3, 1), (-2, 3)]
    } else {
        &[(0, 1), (0, 1), (1, 1), (-1, 1), (2, 1), (1, 2)]
    };
    let &(n, d) = choices.choose(rng).unwrap();
    RatFunc::constant(vars, rat(n, d))
}

fn entry<R: Rng>(rng: &mut R, vars: &Vars, twisted: bool) -> RatFunc {
    if twisted && rng.gen_bool(0.3) {
        let t = RatFunc::var(vars, 0);
        &t + &small_rational(rng, vars, false)
    } else {
        small_rational(rng, vars, false)
    }
}

fn random_matrix<R: Rng>(rng: &mut R, vars: &Vars, rows: usize, cols: usize, twisted: bool) -> RfMatrix {
    RfMatrix::from_fn(rows, cols, &RatFunc::zero(vars), |_, _| entry(rng, vars, twisted))
}

fn random_invertible<R: Rng>(rng: &mut R, vars: &Vars, n: usize, twisted: bool) -> RfMatrix {
    loop {
        let m = random_matrix(rng, vars, n, n, twisted);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Two or three objects of dimension ≤ 2 and a couple of generating
/// morphisms. When `twisted`, the field is ℚ(t) and generated functors get
/// commuting scaling twists `t ↦ c·t`.
pub fn random_category<R: Rng>(rng: &mut R, twisted: bool) -> EvalCategory {
    let vars = if twisted { Vars::new(["t"]) } else { Vars::empty() };
    let nobj = rng.gen_range(2..=3);
    let mut objects: Vec<Object> =
        (0..nobj).map(|k| Object { name: format!("X{}", k + 1), dim: rng.gen_range(0..=2) }).collect();
    objects[0].dim = objects[0].dim.max(1);
    let morphisms = (0..2)
        .map(|k| {
            let (s, t) = (rng.gen_range(0..nobj), rng.gen_range(0..nobj));
            GenMorphism {
                name: format!("phi{}", k + 1),
                src: s,
                tgt: t,
                matrix: random_matrix(rng, &vars, objects[t].dim, objects[s].dim, twisted),
            }
        })
        .collect();
    EvalCategory::new(vars, objects, morphisms).expect("well-formed by construction")
}

fn random_twist<R: Rng>(rng: &mut R, vars: &Vars, modulus: Option<u32>) -> Option<SubstEndo> {
    let images: &[&str] = match modulus {
        None => &["t", "2*t", "-t", "3*t"],
        Some(n) if n % 2 == 0 => &["t", "-t"],
        Some(_) => &["t"],
    };
    let img = parse_ratfunc(images.choose(rng).unwrap(), vars).unwrap();
    let s = SubstEndo::with_images(vars, [("t", img)]).unwrap();
    if s.is_identity() {
        None
    } else {
        Some(s)
    }
}

/// `[[0, I_b], [I_a, 0]]`: the canonical `K^a ⊕ K^b → K^b ⊕ K^a`.
pub fn pad_swap(vars: &Vars, a: usize, b: usize) -> RfMatrix {
    let one = RatFunc::one(vars);
    RfMatrix::from_fn(a + b, a + b, &RatFunc::zero(vars), |r, c| {
        let hit = if r < b { c == a + r } else { c == r - b };
        if hit {
            one.clone()
        } else {
            RatFunc::zero(vars)
        }
    })
}

pub fn random_valid_action<R: Rng>(rng: &mut R, cat: Arc<EvalCategory>, spec: &RandomSpec) -> Result<ActionData, CoherenceError> {
    let pres = &spec.presentation;
    let vars = cat.vars().clone();
    let twisted = !vars.is_empty();
    let m = pres.num_generators();
    let functors: Vec<BlockFunctor> = (1..=m)
        .map(|g| {
            let modulus = pres.modulus(g);
            // A scalar exchange λ·id is whiskered on the left as id_pad ⊕ λ, so
            // scalars only satisfy the hexagon when every pad is 0.
            let pad = if modulus.is_some() || spec.kind == IsoKind::Scalar {
                0
            } else {
                rng.gen_range(0..=spec.max_pad)
            };
            let twist = if twisted { random_twist(rng, &vars, modulus) } else { None };
            BlockFunctor { pad, twist }
        })
        .collect();
    let mut data = ActionData::new(cat.clone(), pres.clone(), functors.clone())?;
    for i in 1..=m {
        for j in 1..i {
            let (ki, kj) = (functors[i - 1].pad, functors[j - 1].pad);
            match spec.kind {
                IsoKind::Identity => {}
                IsoKind::Scalar => {
                    let l = small_rational(rng, &vars, true);
                    data.set_exchange(i, j, RfMatrix::scalar(ki + kj, &l), l)?;
                }
                IsoKind::PadSwap => data.set_exchange(i, j, pad_swap(&vars, ki, kj), RatFunc::one(&vars))?,
            }
        }
    }
    for j in 1..=pres.torsion_moduli().len() {
        let g = pres.free_rank() + j;
        let b = if twisted && functors[g - 1].twist.is_some() && rng.gen_bool(0.5) {
            parse_ratfunc("t^2 + 1", &vars)?
        } else if twisted && functors[g - 1].twist.is_none() && rng.gen_bool(0.5) {
            parse_ratfunc("t", &vars)?
        } else {
            small_rational(rng, &vars, true)
        };
        data.set_torsion(j, b)?;
    }
    if !spec.transport {
        return Ok(data);
    }
    let family: Vec<NatIso> = functors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let pad = random_invertible(rng, &vars, f.pad, twisted);
            let mu = if twisted && rng.gen_bool(0.5) {
                parse_ratfunc("t + 1", &vars).unwrap()
            } else {
                small_rational(rng, &vars, true)
            };
            NatIso { src: vec![k + 1], tgt: vec![k + 1], pad, scalar: mu }
        })
        .collect();
    data.transport(functors, &family)
}
