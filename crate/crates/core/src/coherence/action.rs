use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::json;

use crate::field::{matrix_to_strings, RfMatrix};
use crate::semigroup::{exchange_schedule, words_up_to, AbelianPresentation, StepKind, Word};

use super::category::{check_functor_laws, BlockFunctor, EvalCategory, Table};
use super::natiso::{first_difference, naturality_failures, NatIso};
use super::report::{Failure, Report};
use super::CoherenceError;

/// Generator functors `T(a_i)`, exchange isomorphisms
/// `i_{a_i,a_j}: T_i∘T_j → T_j∘T_i` for `i > j`, and torsion isomorphisms
/// `I_j: T_{n+j}^{∘n_j} → Id`.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionData {
    category: Arc<EvalCategory>,
    presentation: Arc<AbelianPresentation>,
    functors: Vec<BlockFunctor>,
    exchange: BTreeMap<(usize, usize), NatIso>,
    torsion: Vec<NatIso>,
}

impl ActionData {
    /// All exchange and torsion isomorphisms start as identities.
    pub fn new(
        category: Arc<EvalCategory>,
        presentation: Arc<AbelianPresentation>,
        functors: Vec<BlockFunctor>,
    ) -> Result<Self, CoherenceError> {
        let m = presentation.num_generators();
        if functors.len() != m {
            return Err(CoherenceError::Shape(format!("{} functors for {m} generators", functors.len())));
        }
        for (k, f) in functors.iter().enumerate() {
            if let Some(s) = &f.twist {
                if s.vars() != category.vars() {
                    return Err(CoherenceError::Field(crate::field::FieldError::VariableMismatch));
                }
            }
            if presentation.is_torsion(k + 1) && f.pad != 0 {
                return Err(CoherenceError::Invalid(format!(
                    "torsion generator a{} must have pad 0 to admit T^n ≅ Id",
                    k + 1
                )));
            }
        }
        let vars = category.vars().clone();
        let mut exchange = BTreeMap::new();
        for i in 1..=m {
            for j in 1..i {
                let iso = NatIso::identity(&vars, vec![i, j], functors[i - 1].pad + functors[j - 1].pad);
                exchange.insert((i, j), NatIso { tgt: vec![j, i], ..iso });
            }
        }
        let torsion = (1..=presentation.torsion_moduli().len())
            .map(|j| {
                let g = presentation.free_rank() + j;
                let n = presentation.modulus(g).unwrap() as usize;
                NatIso { tgt: vec![], ..NatIso::identity(&vars, vec![g; n], 0) }
            })
            .collect();
        Ok(ActionData { category, presentation, functors, exchange, torsion })
    }

    pub fn category(&self) -> &Arc<EvalCategory> {
        &self.category
    }

    pub fn presentation(&self) -> &Arc<AbelianPresentation> {
        &self.presentation
    }

    pub fn functors(&self) -> &[BlockFunctor] {
        &self.functors
    }

    pub fn table(&self) -> Table<'_> {
        Table(&self.functors)
    }

    pub fn num_generators(&self) -> usize {
        self.functors.len()
    }

    pub fn exchange(&self, i: usize, j: usize) -> Option<&NatIso> {
        self.exchange.get(&(i, j))
    }

    pub fn exchanges(&self) -> impl Iterator<Item = (&(usize, usize), &NatIso)> {
        self.exchange.iter()
    }

    /// `I_j` for the `j`-th torsion generator (1-based).
    pub fn torsion_iso(&self, j: usize) -> Option<&NatIso> {
        self.torsion.get(j.checked_sub(1)?)
    }

    pub fn torsion_isos(&self) -> &[NatIso] {
        &self.torsion
    }

    pub fn set_exchange(&mut self, i: usize, j: usize, pad: RfMatrix, scalar: crate::field::RatFunc) -> Result<(), CoherenceError> {
        let key = (i, j);
        let slot = self
            .exchange
            .get(&key)
            .ok_or_else(|| CoherenceError::Invalid(format!("no exchange isomorphism ({i},{j}); need i > j")))?;
        if pad.rows() != slot.pad_dim() || !pad.is_square() {
            return Err(CoherenceError::Shape(format!(
                "exchange ({i},{j}) needs a {0}x{0} pad block",
                slot.pad_dim()
            )));
        }
        let iso = NatIso::new(vec![i, j], vec![j, i], pad, scalar)?;
        if !iso.is_invertible()? {
            return Err(CoherenceError::NotInvertible(format!("exchange ({i},{j})")));
        }
        self.exchange.insert(key, iso);
        Ok(())
    }

    /// Torsion isomorphisms have pad 0, so only the scalar is free.
    pub fn set_torsion(&mut self, j: usize, scalar: crate::field::RatFunc) -> Result<(), CoherenceError> {
        let slot = self
            .torsion
            .get_mut(j.wrapping_sub(1))
            .ok_or_else(|| CoherenceError::Invalid(format!("no torsion generator {j}")))?;
        if scalar.is_zero() {
            return Err(CoherenceError::NotInvertible(format!("torsion iso {j}")));
        }
        if scalar.vars() != slot.vars() {
            return Err(CoherenceError::Field(crate::field::FieldError::VariableMismatch));
        }
        slot.scalar = scalar;
        Ok(())
    }

    /// Functor laws for each generator and naturality of every stored iso.
    pub fn check_naturality(&self) -> Result<Report, CoherenceError> {
        let mut rep = Report::new("naturality");
        for (k, f) in self.functors.iter().enumerate() {
            rep.checked += 1;
            for msg in check_functor_laws(&self.category, f)? {
                rep.failures.push(Failure { at: json!({ "functor": k + 1 }), object: msg, residual: vec![] });
            }
        }
        let isos = self
            .exchange
            .iter()
            .map(|((i, j), iso)| (json!({ "exchange": [i, j] }), iso))
            .chain(self.torsion.iter().enumerate().map(|(j, iso)| (json!({ "torsion": j + 1 }), iso)));
        for (at, iso) in isos {
            rep.checked += 1;
            for (name, res) in naturality_failures(&self.category, iso, self.table(), self.table())? {
                rep.failures.push(Failure { at: at.clone(), object: name, residual: matrix_to_strings(&res) });
            }
        }
        Ok(rep)
    }

    /// `i_{a_l, a_r}` placed at `pos` inside the composite `letters`.
    pub fn swap_at(&self, letters: &[usize], pos: usize) -> Result<NatIso, CoherenceError> {
        let (l, r) = (letters[pos], letters[pos + 1]);
        let iso = if l > r {
            self.exchange[&(l, r)].clone()
        } else {
            return Err(CoherenceError::Invalid(format!("no exchange for a{l} a{r}")));
        };
        iso.whisker_right(self.table(), &letters[pos + 2..])?.whisker_left(self.table(), &letters[..pos])
    }

    fn torsion_at(&self, letters: &[usize], pos: usize, gen: usize) -> Result<NatIso, CoherenceError> {
        let j = gen - self.presentation.free_rank();
        let n = self.torsion[j - 1].src.len();
        self.torsion[j - 1]
            .whisker_right(self.table(), &letters[pos + n..])?
            .whisker_left(self.table(), &letters[..pos])
    }

    /// For every `i₁ < i₂ < i₃`, compares the two paths around the hexagon
    /// from `T_{i₃}T_{i₂}T_{i₁}` to `T_{i₁}T_{i₂}T_{i₃}`.
    pub fn check_hexagon(&self) -> Result<Report, CoherenceError> {
        let mut rep = Report::new("hexagon");
        let m = self.num_generators();
        for i1 in 1..=m {
            for i2 in i1 + 1..=m {
                for i3 in i2 + 1..=m {
                    rep.checked += 1;
                    let (p1, p2) = self.hexagon_paths(i1, i2, i3)?;
                    if let Some((obj, res)) = first_difference(&self.category, &p1, &p2)? {
                        rep.push(json!([i1, i2, i3]), &self.category, obj, &res);
                    }
                }
            }
        }
        Ok(rep)
    }

    /// The two composites of the hexagon, top path first.
    pub fn hexagon_paths(&self, i1: usize, i2: usize, i3: usize) -> Result<(NatIso, NatIso), CoherenceError> {
        let start = vec![i3, i2, i1];
        let path = |positions: [usize; 3]| -> Result<NatIso, CoherenceError> {
            let mut cur = start.clone();
            let mut acc = NatIso::identity(self.category.vars(), cur.clone(), self.table().pad(&cur));
            for p in positions {
                let step = self.swap_at(&cur, p)?;
                cur = step.tgt.clone();
                acc = acc.then(&step)?;
            }
            Ok(acc)
        };
        Ok((path([0, 1, 0])?, path([1, 0, 1])?))
    }

    /// For each torsion generator `a` of order `n`: `I∘id_T = id_T∘I` as maps
    /// `T^{∘(n+1)} → T`.
    pub fn check_torsion(&self) -> Result<Report, CoherenceError> {
        let mut rep = Report::new("torsion");
        for (k, iso) in self.torsion.iter().enumerate() {
            rep.checked += 1;
            let g = self.presentation.free_rank() + k + 1;
            let lhs = iso.whisker_right(self.table(), &[g])?;
            let rhs = iso.whisker_left(self.table(), &[g])?;
            if let Some((obj, res)) = first_difference(&self.category, &lhs, &rhs)? {
                rep.push(json!({ "torsion": k + 1, "generator": g }), &self.category, obj, &res);
            }
        }
        Ok(rep)
    }

    /// For each torsion generator `b` of order `n` and each other generator
    /// `a`: `I` cancelled next to `T(a)` agrees with `I` cancelled after
    /// moving `T(a)` across all `n` copies of `T(b)`.
    ///
    /// Hexagon and torsion conditions do not imply this once a torsion
    /// generator sits next to another generator: on `Vect` with identity
    /// functors, a scalar exchange `λ` and `I = 1` satisfy both but
    /// associativity at `(b, b^{n−1}, a)` needs `λⁿ = 1`.
    pub fn check_torsion_exchange(&self) -> Result<Report, CoherenceError> {
        let mut rep = Report::new("torsion-exchange");
        let m = self.num_generators();
        for (k, iso) in self.torsion.iter().enumerate() {
            let g = self.presentation.free_rank() + k + 1;
            let n = iso.src.len();
            for a in (1..=m).filter(|&a| a != g) {
                rep.checked += 1;
                let (start, direct, moves, end_pos): (Vec<usize>, usize, Vec<usize>, usize) = if a < g {
                    // T(b)^n T(a): a travels left
                    let mut s = vec![g; n];
                    s.push(a);
                    (s, 0, (0..n).rev().collect(), 1)
                } else {
                    let mut s = vec![a];
                    s.extend(vec![g; n]);
                    (s, 1, (0..n).collect(), 0)
                };
                let lhs = self.torsion_at(&start, direct, g)?;
                let mut cur = start.clone();
                let mut rhs = NatIso::identity(self.category.vars(), cur.clone(), self.table().pad(&cur));
                for p in moves {
                    let step = self.swap_at(&cur, p)?;
                    cur = step.tgt.clone();
                    rhs = rhs.then(&step)?;
                }
                rhs = rhs.then(&self.torsion_at(&cur, end_pos, g)?)?;
                if let Some((obj, res)) = first_difference(&self.category, &lhs, &rhs)? {
                    rep.push(json!({ "torsion": k + 1, "generator": g, "other": a }), &self.category, obj, &res);
                }
            }
        }
        Ok(rep)
    }

    /// `c_{w₁,w₂}: T(w₁)∘T(w₂) → T(w₁w₂)` obtained by replaying the exchange
    /// schedule.
    pub fn extend_iso(&self, w1: &Word, w2: &Word) -> Result<NatIso, CoherenceError> {
        if w1.presentation() != &self.presentation || w2.presentation() != &self.presentation {
            return Err(CoherenceError::Semigroup(crate::semigroup::SemigroupError::PresentationMismatch));
        }
        let mut cur = w1.letters();
        cur.extend(w2.letters());
        let mut acc = NatIso::identity(self.category.vars(), cur.clone(), self.table().pad(&cur));
        for step in exchange_schedule(w1, w2)? {
            let iso = match step.kind {
                StepKind::Swap { .. } => self.swap_at(&cur, step.position)?,
                StepKind::Merge { .. } => continue,
                StepKind::TorsionReduce { j } => self.torsion_at(&cur, step.position, j)?,
            };
            cur = iso.tgt.clone();
            acc = acc.then(&iso)?;
        }
        Ok(acc)
    }

    /// Brute-force check of the associativity square for all triples of
    /// words of length at most `max_len`.
    ///
    /// The sweep is split across `TANNAKIT_THREADS` workers (default 1).
    pub fn verify_associativity(&self, max_len: usize) -> Result<Report, CoherenceError> {
        let words = words_up_to(&self.presentation, max_len);
        let threads = std::env::var("TANNAKIT_THREADS").ok().and_then(|s| s.parse().ok()).unwrap_or(1usize).max(1);
        let n = words.len();
        let total = n * n * n;
        let run = |worker: usize| -> Result<Vec<Failure>, CoherenceError> {
            let mut ext = Extender::new(self);
            let mut fails = Vec::new();
            for idx in (worker..total).step_by(threads) {
                let (f, g, h) = (&words[idx / (n * n)], &words[(idx / n) % n], &words[idx % n]);
                let (lhs, rhs) = ext.associativity_sides(f, g, h)?;
                if let Some((obj, res)) = first_difference(&self.category, &lhs, &rhs)? {
                    fails.push(Failure::new(
                        json!({ "f": f.exps(), "g": g.exps(), "h": h.exps() }),
                        &self.category,
                        obj,
                        &res,
                    ));
                }
            }
            Ok(fails)
        };
        let mut rep = Report::new("associativity");
        rep.checked = total;
        if threads == 1 {
            rep.failures = run(0)?;
        } else {
            let parts: Vec<Result<Vec<Failure>, CoherenceError>> = std::thread::scope(|s| {
                let handles: Vec<_> = (0..threads).map(|w| s.spawn(move || run(w))).collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
            let mut all = Vec::new();
            for p in parts {
                all.extend(p?);
            }
            // restore the sequential order
            let key = |f: &Failure| {
                let get = |k: &str| {
                    words.iter().position(|w| serde_json::to_value(w.exps()).unwrap() == f.at[k]).unwrap_or(0)
                };
                (get("f"), get("g"), get("h"))
            };
            all.sort_by_key(key);
            rep.failures = all;
        }
        Ok(rep)
    }

    /// Replaces the data by the isomorphic data transported along
    /// `m_i: T_i → T'_i`, where `T'` has generator functors `functors`.
    pub fn transport(&self, functors: Vec<BlockFunctor>, m: &[NatIso]) -> Result<ActionData, CoherenceError> {
        let mut out = ActionData::new(self.category.clone(), self.presentation.clone(), functors)?;
        check_family(self, &out, m)?;
        let new_functors = out.functors.clone();
        let (t, t2) = (self.table(), Table(&new_functors));
        for (&(i, j), iso) in &self.exchange {
            let before = horizontal(t, t2, &m[i - 1], &m[j - 1])?;
            let after = horizontal(t, t2, &m[j - 1], &m[i - 1])?;
            let new = before.inverse()?.then(iso)?.then(&after)?;
            out.exchange.insert((i, j), new);
        }
        for (k, iso) in self.torsion.iter().enumerate() {
            let g = self.presentation.free_rank() + k + 1;
            let pow = horizontal_power(t, t2, &m[g - 1], iso.src.len())?;
            out.torsion[k] = pow.inverse()?.then(iso)?;
        }
        Ok(out)
    }
}

/// Memoized `c_{f,g}`.
pub struct Extender<'a> {
    data: &'a ActionData,
    memo: HashMap<(Vec<u32>, Vec<u32>), NatIso>,
}

impl<'a> Extender<'a> {
    pub fn new(data: &'a ActionData) -> Self {
        Extender { data, memo: HashMap::new() }
    }

    pub fn c(&mut self, f: &Word, g: &Word) -> Result<NatIso, CoherenceError> {
        let key = (f.exps().to_vec(), g.exps().to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.data.extend_iso(f, g)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// `c_{fg,h}∘(c_{f,g}·id_h)` and `c_{f,gh}∘(id_f·c_{g,h})`.
    pub fn associativity_sides(&mut self, f: &Word, g: &Word, h: &Word) -> Result<(NatIso, NatIso), CoherenceError> {
        let table = self.data.table();
        let fg = f.mul(g)?;
        let gh = g.mul(h)?;
        let lhs = self.c(f, g)?.whisker_right(table, &h.letters())?.then(&self.c(&fg, h)?)?;
        let rhs = self.c(g, h)?.whisker_left(table, &f.letters())?.then(&self.c(f, &gh)?)?;
        Ok((lhs, rhs))
    }
}

fn check_family(t: &ActionData, t2: &ActionData, m: &[NatIso]) -> Result<(), CoherenceError> {
    if t.presentation != t2.presentation || t.category != t2.category {
        return Err(CoherenceError::Invalid("actions differ in presentation or category".into()));
    }
    if m.len() != t.num_generators() {
        return Err(CoherenceError::Shape(format!("{} components for {} generators", m.len(), t.num_generators())));
    }
    for (k, mk) in m.iter().enumerate() {
        let g = k + 1;
        if mk.src != [g] || mk.tgt != [g] {
            return Err(CoherenceError::Shape(format!("m_{g} must map [{g}] to [{g}]")));
        }
        if mk.pad_dim() != t.functors[k].pad || mk.pad_dim() != t2.functors[k].pad {
            return Err(CoherenceError::Shape(format!("m_{g} pad does not match the functors")));
        }
    }
    Ok(())
}

/// Horizontal composite `m_a * m_b: T_a T_b → T'_a T'_b`, computed as
/// `(m_a · id_{T'_b}) ∘ (id_{T_a} · m_b)`.
fn horizontal(t: Table<'_>, t2: Table<'_>, ma: &NatIso, mb: &NatIso) -> Result<NatIso, CoherenceError> {
    let inner = mb.whisker_left(t, &ma.src)?;
    let outer = ma.whisker_right(t2, &mb.tgt)?;
    inner.then(&outer)
}

/// `m^{*n}: T^n → T'^n`.
fn horizontal_power(t: Table<'_>, t2: Table<'_>, m: &NatIso, n: usize) -> Result<NatIso, CoherenceError> {
    let mut acc = NatIso::identity(m.vars(), vec![], 0);
    for _ in 0..n {
        acc = horizontal(t, t2, m, &acc)?;
    }
    Ok(acc)
}

/// Checks that `m` is a morphism of actions `T → T'`: each `m_i` is natural,
/// the exchange squares commute for every stored `i > j`, and
/// `I'_j ∘ m^{*n_j} = I_j`.
pub fn check_action_morphism(t: &ActionData, t2: &ActionData, m: &[NatIso]) -> Result<Report, CoherenceError> {
    check_family(t, t2, m)?;
    let cat = &t.category;
    let (ta, tb) = (t.table(), t2.table());
    let mut rep = Report::new("action-morphism");
    for (k, mk) in m.iter().enumerate() {
        rep.checked += 1;
        for (name, res) in naturality_failures(cat, mk, ta, tb)? {
            rep.failures.push(Failure { at: json!({ "naturality": k + 1 }), object: name, residual: matrix_to_strings(&res) });
        }
    }
    for (&(i, j), iso) in &t.exchange {
        rep.checked += 1;
        let lhs = iso.then(&horizontal(ta, tb, &m[j - 1], &m[i - 1])?)?;
        let rhs = horizontal(ta, tb, &m[i - 1], &m[j - 1])?.then(&t2.exchange[&(i, j)])?;
        if let Some((obj, res)) = first_difference(cat, &lhs, &rhs)? {
            rep.push(json!({ "exchange": [i, j] }), cat, obj, &res);
        }
    }
    for (k, iso) in t.torsion.iter().enumerate() {
        rep.checked += 1;
        let g = t.presentation.free_rank() + k + 1;
        let lhs = horizontal_power(ta, tb, &m[g - 1], iso.src.len())?.then(&t2.torsion[k])?;
        if let Some((obj, res)) = first_difference(cat, &lhs, iso)? {
            rep.push(json!({ "torsion": k + 1 }), cat, obj, &res);
        }
    }
    Ok(rep)
}
