//! JSON form of action data.
//!
//! ```json
//! {"presentation": {"free": 3, "torsion": []},
//!  "vars": [],
//!  "objects": [{"name": "X", "dim": 2}],
//!  "morphisms": [{"name": "phi", "src": "X", "tgt": "X", "matrix": [["1","0"],["0","2"]]}],
//!  "functors": [{"pad": 1, "twist": null}, ...],
//!  "exchange": {"(3,2)": {"pad": [["1","1"],["0","-1"]], "scalar": "1"}},
//!  "torsion": []}
//! ```
//!
//! An exchange or torsion entry may instead list full components per
//! object, `{"components": {"X": [[...]]}}`; these must have the shape
//! `P ⊕ λ·I` with one `P` and one `λ` for all objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::field::{matrix_from_strings, matrix_to_strings, parse_ratfunc, RatFunc, RfMatrix, SubstEndo, Vars};
use crate::semigroup::AbelianPresentation;

use super::action::ActionData;
use super::category::{BlockFunctor, EvalCategory, GenMorphism, Object};
use super::CoherenceError;

type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryJson {
    #[serde(default)]
    pub vars: Vec<String>,
    pub objects: Vec<Object>,
    #[serde(default)]
    pub morphisms: Vec<MorphismJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub matrix: Rows,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctorJson {
    #[serde(default)]
    pub pad: usize,
    /// Variable name to image; `null` marks a variable outside the domain.
    /// Variables that are not listed are fixed.
    #[serde(default)]
    pub twist: Option<BTreeMap<String, Option<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IsoJson {
    Blocks {
        #[serde(default)]
        pad: Rows,
        scalar: String,
    },
    Components {
        components: BTreeMap<String, Rows>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionJson {
    pub presentation: AbelianPresentation,
    #[serde(flatten)]
    pub category: CategoryJson,
    pub functors: Vec<FunctorJson>,
    #[serde(default)]
    pub exchange: BTreeMap<String, IsoJson>,
    #[serde(default)]
    pub torsion: Vec<IsoJson>,
}

fn parse_shaped(vars: &Vars, rows: &Rows, r: usize, c: usize, what: &str) -> Result<RfMatrix, CoherenceError> {
    let m = if rows.is_empty() || rows.iter().all(Vec::is_empty) && c == 0 {
        RfMatrix::zeros(rows.len(), 0, &RatFunc::zero(vars))
    } else {
        matrix_from_strings(vars, rows)?
    };
    let m = if m.rows() == 0 && r == 0 { RfMatrix::zeros(0, c, &RatFunc::zero(vars)) } else { m };
    let m = if m.cols() == 0 && c == 0 { RfMatrix::zeros(r, 0, &RatFunc::zero(vars)) } else { m };
    if (m.rows(), m.cols()) != (r, c) {
        return Err(CoherenceError::Shape(format!("{what}: expected {r}x{c}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m)
}

pub fn category_from_json(j: &CategoryJson) -> Result<EvalCategory, CoherenceError> {
    let vars = Vars::new(j.vars.iter().cloned());
    let index = |name: &str| {
        j.objects
            .iter()
            .position(|o| o.name == name)
            .ok_or_else(|| CoherenceError::Invalid(format!("unknown object {name}")))
    };
    let mut morphisms = Vec::new();
    for m in &j.morphisms {
        let (s, t) = (index(&m.src)?, index(&m.tgt)?);
        let matrix = parse_shaped(&vars, &m.matrix, j.objects[t].dim, j.objects[s].dim, &m.name)?;
        morphisms.push(GenMorphism { name: m.name.clone(), src: s, tgt: t, matrix });
    }
    EvalCategory::new(vars, j.objects.clone(), morphisms)
}

pub fn category_to_json(cat: &EvalCategory) -> CategoryJson {
    let objects = cat.objects().to_vec();
    CategoryJson {
        vars: cat.vars().names().to_vec(),
        morphisms: cat
            .morphisms()
            .iter()
            .map(|m| MorphismJson {
                name: m.name.clone(),
                src: objects[m.src].name.clone(),
                tgt: objects[m.tgt].name.clone(),
                matrix: matrix_to_strings(&m.matrix),
            })
            .collect(),
        objects,
    }
}

fn functor_from_json(vars: &Vars, f: &FunctorJson) -> Result<BlockFunctor, CoherenceError> {
    let Some(map) = &f.twist else {
        return Ok(BlockFunctor::pad(f.pad));
    };
    let mut s = SubstEndo::identity(vars);
    for (var, img) in map {
        let img = img.as_deref().map(|e| parse_ratfunc(e, vars)).transpose()?;
        s = s.set(var, img)?;
    }
    Ok(if s.is_identity() { BlockFunctor::pad(f.pad) } else { BlockFunctor::twisted(f.pad, s) })
}

fn functor_to_json(f: &BlockFunctor) -> FunctorJson {
    let twist = f.twist.as_ref().map(|s| {
        let vars = s.vars();
        (0..vars.len())
            .filter(|&i| s.image(i) != Some(&RatFunc::var(vars, i)))
            .map(|i| (vars.name(i).to_string(), s.image(i).map(ToString::to_string)))
            .collect()
    });
    FunctorJson { pad: f.pad, twist }
}

/// Split per-object components into one pad block and one scalar.
fn decompose(cat: &EvalCategory, pad: usize, comps: &BTreeMap<String, Rows>, what: &str) -> Result<(RfMatrix, RatFunc), CoherenceError> {
    let vars = cat.vars();
    let mut found: Option<(RfMatrix, Option<RatFunc>)> = None;
    for o in cat.objects() {
        let rows = comps
            .get(&o.name)
            .ok_or_else(|| CoherenceError::Invalid(format!("{what}: no component at {}", o.name)))?;
        let m = parse_shaped(vars, rows, pad + o.dim, pad + o.dim, what)?;
        let p = m.submatrix(0, 0, pad, pad);
        let core = m.submatrix(pad, pad, o.dim, o.dim);
        let off_diagonal = m.submatrix(0, pad, pad, o.dim).is_zero() && m.submatrix(pad, 0, o.dim, pad).is_zero();
        let lambda = if o.dim > 0 { Some(core[(0, 0)].clone()) } else { None };
        let scalar_core = lambda.as_ref().is_none_or(|l| core == RfMatrix::scalar(o.dim, l));
        if !off_diagonal || !scalar_core {
            return Err(CoherenceError::Invalid(format!("{what}: component at {} is not of the form P ⊕ λ·I", o.name)));
        }
        found = match found {
            None => Some((p, lambda)),
            Some((p0, l0)) => {
                if p0 != p || (l0.is_some() && lambda.is_some() && l0 != lambda) {
                    return Err(CoherenceError::Invalid(format!("{what}: components disagree across objects")));
                }
                Some((p0, l0.or(lambda)))
            }
        };
    }
    let (p, l) = found.unwrap_or_else(|| (RfMatrix::rf_identity(pad, vars), None));
    Ok((p, l.unwrap_or_else(|| RatFunc::one(vars))))
}

fn iso_parts(cat: &EvalCategory, pad: usize, iso: &IsoJson, what: &str) -> Result<(RfMatrix, RatFunc), CoherenceError> {
    match iso {
        IsoJson::Blocks { pad: rows, scalar } => {
            let p = parse_shaped(cat.vars(), rows, pad, pad, what)?;
            Ok((p, parse_ratfunc(scalar, cat.vars())?))
        }
        IsoJson::Components { components } => decompose(cat, pad, components, what),
    }
}

fn parse_pair(key: &str) -> Result<(usize, usize), CoherenceError> {
    let bad = || CoherenceError::Invalid(format!("exchange key {key:?} is not of the form \"(i,j)\""));
    let inner = key.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub fn action_from_json(j: &ActionJson) -> Result<ActionData, CoherenceError> {
    let cat = Arc::new(category_from_json(&j.category)?);
    let functors = j.functors.iter().map(|f| functor_from_json(cat.vars(), f)).collect::<Result<Vec<_>, _>>()?;
    let pres = Arc::new(j.presentation.clone());
    let mut d = ActionData::new(cat.clone(), pres.clone(), functors)?;
    for (key, iso) in &j.exchange {
        let (i, k) = parse_pair(key)?;
        if i <= k || i > d.num_generators() {
            return Err(CoherenceError::Invalid(format!("exchange {key}: need m ≥ i > j ≥ 1")));
        }
        let pad = d.functors()[i - 1].pad + d.functors()[k - 1].pad;
        let (p, l) = iso_parts(&cat, pad, iso, key)?;
        d.set_exchange(i, k, p, l)?;
    }
    let r = pres.torsion_moduli().len();
    if !j.torsion.is_empty() && j.torsion.len() != r {
        return Err(CoherenceError::Invalid(format!("{} torsion isos for {r} torsion generators", j.torsion.len())));
    }
    for (k, iso) in j.torsion.iter().enumerate() {
        let (_, l) = iso_parts(&cat, 0, iso, &format!("torsion {}", k + 1))?;
        d.set_torsion(k + 1, l)?;
    }
    Ok(d)
}

pub fn action_to_json(d: &ActionData) -> ActionJson {
    let exchange = d
        .exchanges()
        .map(|(&(i, j), iso)| {
            (format!("({i},{j})"), IsoJson::Blocks { pad: matrix_to_strings(&iso.pad), scalar: iso.scalar.to_string() })
        })
        .collect();
    let torsion = d
        .torsion_isos()
        .iter()
        .map(|iso| IsoJson::Blocks { pad: Vec::new(), scalar: iso.scalar.to_string() })
        .collect();
    ActionJson {
        presentation: (**d.presentation()).clone(),
        category: category_to_json(d.category()),
        functors: d.functors().iter().map(functor_to_json).collect(),
        exchange,
        torsion,
    }
}

pub fn parse_action(text: &str) -> Result<ActionData, CoherenceError> {
    let j: ActionJson = serde_json::from_str(text).map_err(|e| CoherenceError::Invalid(e.to_string()))?;
    action_from_json(&j)
}
