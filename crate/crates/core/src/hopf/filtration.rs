//! The subcomodules `L_{r,s,p} ⊂ B`: spanned by `D_e^r·m` where `m` runs over
//! monomials of degree exactly `s` in the `x_{ij,w}` with `|w| ≤ p`.
//!
//! `Δ(x_{ij,w})` keeps the word and the degree and `Δ(D_e) = D_e ⊗ D_e`, so
//! each `L_{r,s,p}` is a finite-dimensional subcomodule, and their union over
//! all `(r, s, p)` is `B`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::field::Rational;
use crate::semigroup::{words_up_to, Word};

use super::comodule::standard_comodule;
use super::gln::{comultiply, x};
use super::poly::{GPoly, GRing, Ind, Mono};
use super::{gpoly_apply, HopfError};

pub const DEFAULT_BASIS_CAP: usize = 4096;

type Vector = BTreeMap<Mono, Rational>;

/// Row echelon form over ℚ with the largest monomial of each row as pivot.
#[derive(Clone, Debug, Default)]
struct Span {
    rows: BTreeMap<Mono, Vector>,
}

impl Span {
    fn reduce(&self, mut v: Vector) -> Vector {
        while let Some(k) = v.keys().rev().find(|k| self.rows.contains_key(*k)).cloned() {
            let c = v[&k].clone();
            for (m, a) in &self.rows[&k] {
                let e = v.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &c * a;
                if e.is_zero() {
                    v.remove(m);
                }
            }
        }
        v
    }

    /// Adds `v`; returns false if it was already in the span.
    fn insert(&mut self, v: Vector) -> bool {
        let v = self.reduce(v);
        let Some((pivot, lead)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        let row = v.into_iter().map(|(m, c)| (m, c / &lead)).collect();
        self.rows.insert(pivot, row);
        true
    }

    fn contains(&self, v: Vector) -> bool {
        self.reduce(v).is_empty()
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub n: usize,
    pub r: u32,
    pub s: u32,
    pub p: usize,
    /// Words `w` with `|w| ≤ p`, as exponent vectors.
    pub words: Vec<Vec<u32>>,
    /// Dimension of the span of the basis elements.
    pub dim: usize,
    /// `binom(N + s − 1, s)` with `N = n²·#words`: monomials in the `x` are
    /// independent and `D_e^r` is a unit.
    pub expected_dim: usize,
    /// Every `Δ(b)` lies in `L ⊗ B`.
    pub subcomodule: bool,
    /// `(φ_i ⊗ id)∘ρ = Δ∘φ_i` for `φ_i: v_j ↦ x_{ij,w}` on each twisted
    /// standard comodule `^wV` with `|w| ≤ p`.
    pub equivariant: bool,
    /// `Δ(h·b) = h·Δ(b)` for each generator `h` and basis element `b`.
    pub action_compatible: bool,
    /// Basis elements whose coaction left `L`, by index.
    pub failures: Vec<usize>,
    #[serde(skip)]
    basis: Vec<GPoly>,
    #[serde(skip)]
    span: Span,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.subcomodule && self.equivariant && self.action_compatible && self.dim == self.expected_dim
    }

    pub fn basis(&self) -> &[GPoly] {
        &self.basis
    }

    /// Membership of a side-0 element of `B`.
    pub fn contains(&self, f: &GPoly) -> bool {
        self.span.contains(f.terms().clone())
    }
}

fn count_monomials(gens: usize, s: u32) -> usize {
    // binom(gens + s − 1, s), saturating
    let mut acc: u128 = 1;
    for k in 1..=u128::from(s) {
        acc = acc.saturating_mul(gens as u128 + k - 1) / k;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    if gens == 0 && s > 0 {
        return 0;
    }
    acc as usize
}

fn monomials(gens: &[GPoly], s: u32, start: usize, cur: &GPoly, out: &mut Vec<GPoly>) {
    if s == 0 {
        out.push(cur.clone());
        return;
    }
    for k in start..gens.len() {
        monomials(gens, s - 1, k, &cur.mul(&gens[k]), out);
    }
}

/// Builds `L_{r,s,p}` and certifies that it is a subcomodule.
///
/// The certificate groups `Δ(b)` by its side-1 monomials, which are linearly
/// independent in `B`, and checks that every side-0 coefficient reduces to
/// zero against the basis. Refuses when the basis would exceed `cap`.
pub fn l_filtration(ring: &Arc<GRing>, r: u32, s: u32, p: usize, cap: usize) -> Result<FiltrationReport, HopfError> {
    let n = ring.n;
    let words = words_up_to(&ring.pres, p);
    let ngens = n * n * words.len();
    let size = count_monomials(ngens, s);
    if size > cap {
        return Err(HopfError::BasisTooLarge { size, cap });
    }
    let gens: Vec<GPoly> = words
        .iter()
        .flat_map(|w| (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j, w))))
        .map(|(i, j, w)| x(ring, i, j, w))
        .collect();
    let e = Word::identity(&ring.pres);
    let de = GPoly::ind(ring, Ind::d(&e)).pow(r);
    let mut basis = Vec::with_capacity(size);
    monomials(&gens, s, 0, &de, &mut basis);

    let mut span = Span::default();
    for b in &basis {
        span.insert(b.terms().clone());
    }

    let mut failures = Vec::new();
    for (idx, b) in basis.iter().enumerate() {
        let delta = comultiply(b)?;
        let mut by_right: BTreeMap<Mono, Vector> = BTreeMap::new();
        for (m, c) in delta.terms() {
            let (left, right): (Mono, Mono) =
                m.iter().map(|(k, &v)| (k.clone(), v)).partition(|(k, _)| k.side == 0);
            by_right.entry(right).or_default().insert(left, c.clone());
        }
        if !by_right.into_values().all(|v| span.contains(v)) {
            failures.push(idx);
        }
    }

    let mut equivariant = true;
    for w in &words {
        let v = standard_comodule(ring, w);
        for i in 1..=n {
            for j in 1..=n {
                let lhs = (1..=n).fold(GPoly::zero(ring), |acc, l| {
                    acc.add(&x(ring, i, l, w).mul(&v.entry(l - 1, j - 1).rename(|ind| ind.on_side(1))))
                });
                if lhs != comultiply(&x(ring, i, j, w))? {
                    equivariant = false;
                }
            }
        }
    }

    let mut action_compatible = true;
    'outer: for g in 1..=ring.pres.num_generators() {
        let h = Word::generator(&ring.pres, g)?;
        for b in &basis {
            let hb = gpoly_apply(&h, b)?;
            if comultiply(&hb)? != gpoly_apply(&h, &comultiply(b)?)? {
                action_compatible = false;
                break 'outer;
            }
        }
    }

    Ok(FiltrationReport {
        n,
        r,
        s,
        p,
        words: words.iter().map(|w| w.exps().to_vec()).collect(),
        dim: span.rank(),
        expected_dim: size,
        subcomodule: failures.is_empty(),
        equivariant,
        action_compatible,
        failures,
        basis,
        span,
    })
}
