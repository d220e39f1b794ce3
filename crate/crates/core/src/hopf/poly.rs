use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::field::Rational;
use crate::semigroup::{AbelianPresentation, Word};

use super::HopfError;

/// Indeterminate symbol: `x_{ij}` (1-based), `y_i`, or the formal inverse
/// determinant `D`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    X(usize, usize),
    Y(usize),
    D,
}

/// `sym_w` on tensor factor `side` (0 outside tensor products).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ind {
    pub side: u8,
    pub sym: Sym,
    pub word: Vec<u32>,
}

impl Ind {
    pub fn x(i: usize, j: usize, w: &Word) -> Self {
        Ind { side: 0, sym: Sym::X(i, j), word: w.exps().to_vec() }
    }

    pub fn y(i: usize, w: &Word) -> Self {
        Ind { side: 0, sym: Sym::Y(i), word: w.exps().to_vec() }
    }

    pub fn d(w: &Word) -> Self {
        Ind { side: 0, sym: Sym::D, word: w.exps().to_vec() }
    }

    pub fn on_side(&self, side: u8) -> Self {
        Ind { side, ..self.clone() }
    }

    /// `"x[i][j]@[e1,e2]"`, `"y[i]@[...]"`, `"D@[...]"`; a nonzero side is
    /// prefixed as `"1:"`.
    pub fn key(&self) -> String {
        let w = self.word.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let base = match self.sym {
            Sym::X(i, j) => format!("x[{i}][{j}]@[{w}]"),
            Sym::Y(i) => format!("y[{i}]@[{w}]"),
            Sym::D => format!("D@[{w}]"),
        };
        if self.side == 0 {
            base
        } else {
            format!("{}:{base}", self.side)
        }
    }

    pub fn parse_key(key: &str) -> Result<Self, HopfError> {
        let bad = || HopfError::Parse(format!("bad indeterminate {key:?}"));
        let (side, rest) = match key.split_once(':') {
            Some((s, r)) => (s.parse::<u8>().map_err(|_| bad())?, r),
            None => (0, key),
        };
        let (head, w) = rest.split_once('@').ok_or_else(bad)?;
        let w = w.strip_prefix('[').and_then(|w| w.strip_suffix(']')).ok_or_else(bad)?;
        let word = if w.trim().is_empty() {
            Vec::new()
        } else {
            w.split(',').map(|e| e.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?
        };
        let idx = |s: &str| -> Result<Vec<usize>, HopfError> {
            s.split(']')
                .filter(|p| !p.is_empty())
                .map(|p| p.strip_prefix('[').and_then(|n| n.parse().ok()).ok_or_else(bad))
                .collect()
        };
        let sym = if head == "D" {
            Sym::D
        } else if let Some(r) = head.strip_prefix('x') {
            match idx(r)?.as_slice() {
                [i, j] => Sym::X(*i, *j),
                _ => return Err(bad()),
            }
        } else if let Some(r) = head.strip_prefix('y') {
            match idx(r)?.as_slice() {
                [i] => Sym::Y(*i),
                _ => return Err(bad()),
            }
        } else {
            return Err(bad());
        };
        Ok(Ind { side, sym, word })
    }
}

pub type Mono = BTreeMap<Ind, u32>;

/// Ambient data: the semigroup and the size `n` of the `GL_n` whose
/// determinant relation `det_w·D_w = 1` is imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRing {
    pub pres: Arc<AbelianPresentation>,
    pub n: usize,
}

impl GRing {
    pub fn new(pres: Arc<AbelianPresentation>, n: usize) -> Arc<Self> {
        Arc::new(GRing { pres, n })
    }

    pub fn word(&self, exps: &[u32]) -> Result<Word, HopfError> {
        Ok(Word::from_exps(&self.pres, exps.to_vec())?)
    }
}

/// Polynomial over ℚ in the indeterminates `sym_w`, kept in normal form
/// modulo `det_w·D_w = 1` for every word `w` and tensor side.
///
/// The normal form rewrites `x_{11,w}⋯x_{nn,w}·D_w` to
/// `1 − (det_w − x_{11,w}⋯x_{nn,w})·D_w`. The diagonal term is the
/// lex-leading term of `det_w`, and relations for different `w` share no
/// variables, so the rewriting is confluent and equality of normal forms is
/// equality in the ring.
#[derive(Clone, PartialEq, Eq)]
pub struct GPoly {
    ring: Arc<GRing>,
    terms: BTreeMap<Mono, Rational>,
}

impl GPoly {
    pub fn zero(ring: &Arc<GRing>) -> Self {
        GPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<GRing>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Mono::new(), c);
        }
        p
    }

    pub fn one(ring: &Arc<GRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn ind(ring: &Arc<GRing>, ind: Ind) -> Self {
        Self::monomial(ring, Mono::from([(ind, 1)]), Rational::one())
    }

    pub fn monomial(ring: &Arc<GRing>, m: Mono, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p.normalized()
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational)>>(ring: &Arc<GRing>, terms: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p.normalized()
    }

    pub fn ring(&self) -> &Arc<GRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Mono::new()).cloned(),
            _ => None,
        }
    }

    /// Total degree, counting `D` like any other indeterminate.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.values().sum()).max()
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &GPoly) {
        assert_eq!(self.ring, other.ring, "polynomials over different rings");
    }

    pub fn add(&self, other: &GPoly) -> GPoly {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GPoly) -> GPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> GPoly {
        if c.is_zero() {
            return GPoly::zero(&self.ring);
        }
        GPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul(&self, other: &GPoly) -> GPoly {
        self.check_ring(other);
        let mut out = GPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out.normalized()
    }

    pub fn pow(&self, e: u32) -> GPoly {
        let mut acc = GPoly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes each indeterminate by a polynomial (an algebra map).
    pub fn substitute(&self, target: &Arc<GRing>, mut f: impl FnMut(&Ind) -> Result<GPoly, HopfError>) -> Result<GPoly, HopfError> {
        let mut cache: BTreeMap<Ind, GPoly> = BTreeMap::new();
        let mut out = GPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = GPoly::constant(target, c.clone());
            for (ind, &e) in m {
                if !cache.contains_key(ind) {
                    cache.insert(ind.clone(), f(ind)?);
                }
                t = t.mul(&cache[ind].pow(e));
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Renames indeterminates (must be injective to stay in normal form;
    /// the result is renormalized anyway).
    pub fn rename(&self, mut f: impl FnMut(&Ind) -> Ind) -> GPoly {
        let mut out = GPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut nm = Mono::new();
            for (ind, &e) in m {
                *nm.entry(f(ind)).or_insert(0) += e;
            }
            out.add_term(nm, c.clone());
        }
        out.normalized()
    }

    fn normalized(mut self) -> GPoly {
        let n = self.ring.n;
        if n == 0 {
            return self;
        }
        loop {
            let hit = self.terms.iter().find_map(|(m, c)| reducible(m, n).map(|key| (m.clone(), c.clone(), key)));
            let Some((m, c, (side, word))) = hit else {
                return self;
            };
            self.terms.remove(&m);
            // m = diag·D·rest  ↦  rest − rest·(det − diag)·D
            let mut rest = m.clone();
            let d = Ind { side, sym: Sym::D, word: word.clone() };
            dec(&mut rest, &d);
            for i in 1..=n {
                dec(&mut rest, &Ind { side, sym: Sym::X(i, i), word: word.clone() });
            }
            self.add_term(rest.clone(), c.clone());
            for (perm, sign) in permutations(n) {
                if perm.iter().enumerate().all(|(i, &p)| i == p) {
                    continue;
                }
                let mut t = rest.clone();
                for (i, &p) in perm.iter().enumerate() {
                    *t.entry(Ind { side, sym: Sym::X(i + 1, p + 1), word: word.clone() }).or_insert(0) += 1;
                }
                *t.entry(d.clone()).or_insert(0) += 1;
                self.add_term(t, &c * Rational::from_integer((-sign).into()));
            }
        }
    }
}

fn dec(m: &mut Mono, ind: &Ind) {
    let e = m.get_mut(ind).expect("present");
    *e -= 1;
    if *e == 0 {
        m.remove(ind);
    }
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = a.clone();
    for (k, e) in b {
        *out.entry(k.clone()).or_insert(0) += e;
    }
    out
}

/// A `(side, w)` for which the monomial contains `x_{11,w}⋯x_{nn,w}·D_w`.
fn reducible(m: &Mono, n: usize) -> Option<(u8, Vec<u32>)> {
    m.keys().filter(|k| k.sym == Sym::D).find_map(|d| {
        let all = (1..=n).all(|i| m.contains_key(&Ind { side: d.side, sym: Sym::X(i, i), word: d.word.clone() }));
        all.then(|| (d.side, d.word.clone()))
    })
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, n, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut perms = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], n, &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let body: Vec<String> =
                m.iter().map(|(k, &e)| if e == 1 { k.key() } else { format!("{}^{e}", k.key()) }).collect();
            if body.is_empty() {
                write!(f, "{}", crate::field::rational::format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", body.join("*"))?;
            } else {
                write!(f, "{}*{}", crate::field::rational::format_rational(&a), body.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
