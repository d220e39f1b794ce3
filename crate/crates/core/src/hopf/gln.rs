//! Structure maps of `B = ℚ{x_{11}, …, x_{nn}, 1/det}_G`:
//! `Δ(x_{ij,w}) = Σ_l x_{il,w} ⊗ x_{lj,w}`, `ε(x_{ij,w}) = δ_{ij}`,
//! `S(x_{ij,w}) = adj(X_w)_{ij}·D_w`, `Δ(D_w) = D_w ⊗ D_w`, `S(D_w) = det_w`.
//!
//! Tensor powers are polynomials whose indeterminates carry a side index.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::Rational;
use crate::semigroup::Word;

use super::poly::{permutations, GPoly, GRing, Ind, Mono, Sym};
use super::HopfError;

pub fn x(ring: &Arc<GRing>, i: usize, j: usize, w: &Word) -> GPoly {
    GPoly::ind(ring, Ind::x(i, j, w))
}

fn xs(ring: &Arc<GRing>, i: usize, j: usize, word: &[u32], side: u8) -> GPoly {
    GPoly::ind(ring, Ind { side, sym: Sym::X(i, j), word: word.to_vec() })
}

/// Determinant of the matrix formed by the given rows and columns of `X_w`.
fn minor(ring: &Arc<GRing>, rows: &[usize], cols: &[usize], word: &[u32], side: u8) -> GPoly {
    let mut acc = GPoly::zero(ring);
    for (perm, sign) in permutations(rows.len()) {
        let mut m = Mono::new();
        for (k, &p) in perm.iter().enumerate() {
            *m.entry(Ind { side, sym: Sym::X(rows[k], cols[p]), word: word.to_vec() }).or_insert(0) += 1;
        }
        acc = acc.add(&GPoly::monomial(ring, m, Rational::from_integer(sign.into())));
    }
    acc
}

pub fn det(ring: &Arc<GRing>, w: &Word) -> GPoly {
    let all: Vec<usize> = (1..=ring.n).collect();
    minor(ring, &all, &all, w.exps(), 0)
}

fn adjugate_entry(ring: &Arc<GRing>, i: usize, j: usize, word: &[u32], side: u8) -> GPoly {
    // adj(X)_{ij} = (−1)^{i+j} · minor deleting row j and column i
    let rows: Vec<usize> = (1..=ring.n).filter(|&r| r != j).collect();
    let cols: Vec<usize> = (1..=ring.n).filter(|&c| c != i).collect();
    let m = minor(ring, &rows, &cols, word, side);
    if (i + j).is_multiple_of(2) {
        m
    } else {
        m.scale(&-Rational::one())
    }
}

fn gl_only(ind: &Ind) -> Result<(), HopfError> {
    match ind.sym {
        Sym::Y(_) => Err(HopfError::Shape(format!("{} is not a coordinate of GL_n", ind.key()))),
        _ => Ok(()),
    }
}

/// `Δ` of one indeterminate, landing on sides `(l, r)`.
fn delta_ind(ring: &Arc<GRing>, ind: &Ind, l: u8, r: u8) -> Result<GPoly, HopfError> {
    gl_only(ind)?;
    Ok(match ind.sym {
        Sym::X(i, j) => (1..=ring.n).fold(GPoly::zero(ring), |acc, k| {
            acc.add(&xs(ring, i, k, &ind.word, l).mul(&xs(ring, k, j, &ind.word, r)))
        }),
        Sym::D => GPoly::ind(ring, ind.on_side(l)).mul(&GPoly::ind(ring, ind.on_side(r))),
        Sym::Y(_) => unreachable!(),
    })
}

fn epsilon_ind(ind: &Ind) -> Result<Rational, HopfError> {
    gl_only(ind)?;
    Ok(match ind.sym {
        Sym::X(i, j) if i == j => Rational::one(),
        Sym::X(..) => Rational::zero(),
        _ => Rational::one(),
    })
}

fn antipode_ind(ring: &Arc<GRing>, ind: &Ind) -> Result<GPoly, HopfError> {
    gl_only(ind)?;
    let all: Vec<usize> = (1..=ring.n).collect();
    Ok(match ind.sym {
        Sym::X(i, j) => adjugate_entry(ring, i, j, &ind.word, ind.side).mul(&GPoly::ind(ring, d_of(ind))),
        Sym::D => minor(ring, &all, &all, &ind.word, ind.side),
        Sym::Y(_) => unreachable!(),
    })
}

fn d_of(ind: &Ind) -> Ind {
    Ind { side: ind.side, sym: Sym::D, word: ind.word.clone() }
}

fn require_side0(f: &GPoly) -> Result<(), HopfError> {
    if f.terms().keys().flat_map(|m| m.keys()).any(|i| i.side != 0) {
        return Err(HopfError::Shape("expected an element of B, not of a tensor power".into()));
    }
    Ok(())
}

/// `Δ(f) ∈ B ⊗ B` (sides 0 and 1).
pub fn comultiply(f: &GPoly) -> Result<GPoly, HopfError> {
    require_side0(f)?;
    let ring = f.ring().clone();
    f.substitute(&ring, |ind| delta_ind(&ring, ind, 0, 1))
}

pub fn counit(f: &GPoly) -> Result<Rational, HopfError> {
    require_side0(f)?;
    let ring = f.ring().clone();
    let v = f.substitute(&ring, |ind| Ok(GPoly::constant(&ring, epsilon_ind(ind)?)))?;
    Ok(v.as_constant().expect("constants map to constants"))
}

pub fn antipode(f: &GPoly) -> Result<GPoly, HopfError> {
    require_side0(f)?;
    let ring = f.ring().clone();
    f.substitute(&ring, |ind| antipode_ind(&ring, ind))
}

/// `(Δ⊗id)Δ(f) − (id⊗Δ)Δ(f)` on sides 0, 1, 2.
pub fn coassociativity_defect(f: &GPoly) -> Result<GPoly, HopfError> {
    let ring = f.ring().clone();
    let d = comultiply(f)?;
    let left = d.substitute(&ring, |ind| match ind.side {
        0 => delta_ind(&ring, ind, 0, 1),
        _ => Ok(GPoly::ind(&ring, ind.on_side(2))),
    })?;
    let right = d.substitute(&ring, |ind| match ind.side {
        0 => Ok(GPoly::ind(&ring, ind.clone())),
        _ => delta_ind(&ring, ind, 1, 2),
    })?;
    Ok(left.sub(&right))
}

/// `((ε⊗id)Δ(f) − f, (id⊗ε)Δ(f) − f)`.
pub fn counit_defect(f: &GPoly) -> Result<(GPoly, GPoly), HopfError> {
    let ring = f.ring().clone();
    let d = comultiply(f)?;
    let collapse = |keep: u8| {
        d.substitute(&ring, |ind| {
            if ind.side == keep {
                Ok(GPoly::ind(&ring, ind.on_side(0)))
            } else {
                Ok(GPoly::constant(&ring, epsilon_ind(ind)?))
            }
        })
    };
    Ok((collapse(1)?.sub(f), collapse(0)?.sub(f)))
}

/// `(m(S⊗id)Δ(f) − ε(f), m(id⊗S)Δ(f) − ε(f))`.
pub fn antipode_defect(f: &GPoly) -> Result<(GPoly, GPoly), HopfError> {
    let ring = f.ring().clone();
    let d = comultiply(f)?;
    let eps = GPoly::constant(&ring, counit(f)?);
    let apply_on = |s: u8| {
        d.substitute(&ring, |ind| {
            let base = ind.on_side(0);
            if ind.side == s {
                antipode_ind(&ring, &base)
            } else {
                Ok(GPoly::ind(&ring, base))
            }
        })
    };
    Ok((apply_on(0)?.sub(&eps), apply_on(1)?.sub(&eps)))
}

/// A few terms of total degree ≤ `max_deg` in the `x_{ij,w}` for the given
/// words, sometimes times a `D_w`.
pub fn random_element<R: Rng>(rng: &mut R, ring: &Arc<GRing>, words: &[Word], max_deg: u32, with_d: bool) -> GPoly {
    let coeffs = [1i64, -1, 2, 3, -2, 5];
    let nterms = rng.gen_range(1..=3);
    let mut f = GPoly::zero(ring);
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=max_deg);
        let mut t = GPoly::constant(ring, Rational::from_integer((*coeffs.choose(rng).unwrap()).into()));
        for _ in 0..deg {
            let w = words.choose(rng).unwrap();
            let (i, j) = (rng.gen_range(1..=ring.n), rng.gen_range(1..=ring.n));
            t = t.mul(&x(ring, i, j, w));
        }
        if with_d && rng.gen_bool(0.3) {
            let w = words.choose(rng).unwrap();
            t = t.mul(&GPoly::ind(ring, Ind::d(w)));
        }
        f = f.add(&t);
    }
    f
}

/// Convenience bundle for one `GL_n` over one semigroup.
#[derive(Clone, Debug)]
pub struct GlnHopf {
    pub ring: Arc<GRing>,
}

impl GlnHopf {
    pub fn new(ring: Arc<GRing>) -> Self {
        GlnHopf { ring }
    }

    /// Coassociativity, both counit laws and both antipode laws on `f`.
    pub fn check(&self, f: &GPoly) -> Result<bool, HopfError> {
        let (c1, c2) = counit_defect(f)?;
        let (s1, s2) = antipode_defect(f)?;
        Ok(coassociativity_defect(f)?.is_zero() && c1.is_zero() && c2.is_zero() && s1.is_zero() && s2.is_zero())
    }

    /// All `x_{ij,w}` and `D_w` for the given words.
    pub fn generators(&self, words: &[Word]) -> Vec<GPoly> {
        let mut out = Vec::new();
        for w in words {
            for i in 1..=self.ring.n {
                for j in 1..=self.ring.n {
                    out.push(x(&self.ring, i, j, w));
                }
            }
            out.push(GPoly::ind(&self.ring, Ind::d(w)));
        }
        out
    }
}
