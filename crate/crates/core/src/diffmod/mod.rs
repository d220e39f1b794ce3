//! Differential modules `∂Y = A·Y` over ℚ(vars) with a derivation and named
//! substitution endomorphisms.
//!
//! Twisting by σ with `∂∘σ = λ·σ∘∂` sends `A` to `λ·σ(A)`: if `∂y = A·y`
//! then `∂(σy) = λ·σ(∂y) = λ·σ(A)·σy`. Twisting by σ₂ then σ₁ (the
//! scale then the shift) turns `nx + m` into `s₂²nx + s₂m + s₁s₂²n`, and the
//! other order gives `s₂²nx + s₂m + s₁s₂n`.
//!
//! Gauging by `C` (new basis `Y = C·Z`) gives `C⁻¹AC − C⁻¹∂C`, and
//! `gauge(gauge(M, C), C′) = gauge(M, C·C′)`.

mod examples;
mod solve;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{
    commutation_factor, mat_inverse, matrix_from_strings, matrix_to_strings, parse_ratfunc, DerivationTable, FieldError,
    RatFunc, RfMatrix, SubstEndo, Vars,
};

pub use examples::{
    commute_up_to_gauge, hyper_companion, hyper_field, hyper_gauge, shift_scale_field, CommuteReport, CommuteRow,
    ContiguityCheck, GaugeVersion, check_contiguity,
};
pub use solve::{hyperexp_criterion, solve_gauge};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiffModError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unknown endomorphism {0:?}")]
    UnknownEndomorphism(String),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("modules live over different fields")]
    FieldMismatch,
    #[error("gauge matrix is singular")]
    Singular,
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// An endomorphism together with its commutation factor with ∂.
#[derive(Clone, Debug, PartialEq)]
pub struct Endo {
    pub sigma: SubstEndo,
    pub lambda: RatFunc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffField {
    vars: Vars,
    derivation: DerivationTable,
    endos: BTreeMap<String, Endo>,
}

impl DiffField {
    pub fn new(derivation: DerivationTable) -> Self {
        DiffField { vars: derivation.vars().clone(), derivation, endos: BTreeMap::new() }
    }

    /// ℚ(vars) with `∂ = d/d(var)`.
    pub fn d_by(vars: &Vars, var: &str) -> Result<Self, DiffModError> {
        Ok(Self::new(DerivationTable::d_by(vars, var)?))
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn derivation(&self) -> &DerivationTable {
        &self.derivation
    }

    pub fn endos(&self) -> &BTreeMap<String, Endo> {
        &self.endos
    }

    /// Registers σ; its λ is computed and must exist.
    pub fn register(&mut self, name: &str, sigma: SubstEndo) -> Result<&Endo, DiffModError> {
        if sigma.vars() != &self.vars {
            return Err(FieldError::VariableMismatch.into());
        }
        let lambda = commutation_factor(&sigma, &self.derivation)?;
        self.endos.insert(name.to_string(), Endo { sigma, lambda });
        Ok(&self.endos[name])
    }

    /// Registers `outer ∘ inner` with factor `λ_outer·outer(λ_inner)`.
    pub fn register_composite(&mut self, name: &str, outer: &str, inner: &str) -> Result<&Endo, DiffModError> {
        let o = self.endo(outer)?.clone();
        let i = self.endo(inner)?;
        let sigma = o.sigma.compose(&i.sigma)?;
        let lambda = &o.lambda * &o.sigma.apply(&i.lambda)?;
        self.endos.insert(name.to_string(), Endo { sigma, lambda });
        Ok(&self.endos[name])
    }

    pub fn endo(&self, name: &str) -> Result<&Endo, DiffModError> {
        self.endos.get(name).ok_or_else(|| DiffModError::UnknownEndomorphism(name.to_string()))
    }

    pub fn derive_matrix(&self, m: &RfMatrix) -> RfMatrix {
        m.map(&RatFunc::zero(&self.vars), |f| self.derivation.derive(f))
    }

    pub fn parse(&self, s: &str) -> Result<RatFunc, DiffModError> {
        Ok(parse_ratfunc(s, &self.vars)?)
    }

    pub fn parse_matrix<S: AsRef<str>>(&self, rows: &[Vec<S>]) -> Result<RfMatrix, DiffModError> {
        Ok(matrix_from_strings(&self.vars, rows)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffModule {
    matrix: RfMatrix,
}

impl DiffModule {
    pub fn new(field: &DiffField, matrix: RfMatrix) -> Result<Self, DiffModError> {
        if !matrix.is_square() {
            return Err(DiffModError::Invalid(format!("{}x{} system matrix", matrix.rows(), matrix.cols())));
        }
        if matrix.vars() != field.vars() {
            return Err(DiffModError::FieldMismatch);
        }
        Ok(DiffModule { matrix })
    }

    /// The trivial module of dimension `d` (`A = 0`).
    pub fn trivial(field: &DiffField, d: usize) -> Self {
        DiffModule { matrix: RfMatrix::zeros(d, d, &RatFunc::zero(field.vars())) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RfMatrix {
        &self.matrix
    }
}

fn same_field(field: &DiffField, ms: &[&RfMatrix]) -> Result<(), DiffModError> {
    if ms.iter().any(|m| m.vars() != field.vars()) {
        Err(DiffModError::FieldMismatch)
    } else {
        Ok(())
    }
}

/// `λ·σ(A)`.
pub fn twist(field: &DiffField, m: &DiffModule, name: &str) -> Result<DiffModule, DiffModError> {
    let e = field.endo(name)?;
    twist_by(field, m, e)
}

pub fn twist_by(field: &DiffField, m: &DiffModule, e: &Endo) -> Result<DiffModule, DiffModError> {
    same_field(field, &[&m.matrix])?;
    let sa = m.matrix.try_map(&RatFunc::zero(field.vars()), |f| e.sigma.apply(f))?;
    Ok(DiffModule { matrix: sa.scale(&e.lambda) })
}

/// `C⁻¹AC − C⁻¹∂C`.
pub fn gauge(field: &DiffField, m: &DiffModule, c: &RfMatrix) -> Result<DiffModule, DiffModError> {
    same_field(field, &[&m.matrix, c])?;
    if c.rows() != m.dim() || c.cols() != m.dim() {
        return Err(DiffModError::Dimension(m.dim(), c.rows()));
    }
    let ci = mat_inverse(c).map_err(|e| match e {
        FieldError::Singular => DiffModError::Singular,
        e => e.into(),
    })?;
    let ac = m.matrix.mul(c)?;
    let lhs = ci.mul(&ac)?;
    let rhs = ci.mul(&field.derive_matrix(c))?;
    Ok(DiffModule { matrix: lhs.sub(&rhs)? })
}

/// Whether `gauge(M, C) = N`, checked as `∂C = A·C − C·B` (no inverse) once
/// `C` is known to be invertible.
pub fn verify_gauge_equiv(field: &DiffField, m: &DiffModule, n: &DiffModule, c: &RfMatrix) -> Result<bool, DiffModError> {
    same_field(field, &[&m.matrix, &n.matrix, c])?;
    if m.dim() != n.dim() {
        return Err(DiffModError::Dimension(m.dim(), n.dim()));
    }
    if c.rows() != m.dim() || c.cols() != m.dim() {
        return Err(DiffModError::Dimension(m.dim(), c.rows()));
    }
    if c.det()?.is_zero() {
        return Ok(false);
    }
    let lhs = field.derive_matrix(c);
    let rhs = m.matrix.mul(c)?.sub(&c.mul(&n.matrix)?)?;
    Ok(lhs.equals(&rhs)?)
}

/// `A⊗I + I⊗B`.
pub fn tensor(field: &DiffField, m: &DiffModule, n: &DiffModule) -> Result<DiffModule, DiffModError> {
    same_field(field, &[&m.matrix, &n.matrix])?;
    let (im, in_) = (RfMatrix::rf_identity(m.dim(), field.vars()), RfMatrix::rf_identity(n.dim(), field.vars()));
    Ok(DiffModule { matrix: m.matrix.kronecker(&in_).add(&im.kronecker(&n.matrix))? })
}

/// `−Aᵀ`.
pub fn dual(m: &DiffModule) -> DiffModule {
    DiffModule { matrix: m.matrix.transpose().neg() }
}

pub fn direct_sum(field: &DiffField, m: &DiffModule, n: &DiffModule) -> Result<DiffModule, DiffModError> {
    same_field(field, &[&m.matrix, &n.matrix])?;
    Ok(DiffModule { matrix: m.matrix.direct_sum(&n.matrix) })
}

/// The permutation `P` with `P(u⊗v) = v⊗u` for `u ∈ K^p`, `v ∈ K^q`.
pub fn swap_permutation(vars: &Vars, p: usize, q: usize) -> RfMatrix {
    RfMatrix::from_fn(p * q, p * q, &RatFunc::zero(vars), |r, c| {
        // column c = i*q + j (u_i ⊗ v_j) goes to row j*p + i
        let (i, j) = (c / q, c % q);
        if r == j * p + i {
            RatFunc::one(vars)
        } else {
            RatFunc::zero(vars)
        }
    })
}

// JSON forms.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldJson {
    pub vars: Vec<String>,
    /// `∂v` per variable; unlisted variables are constants.
    #[serde(default)]
    pub derivation: BTreeMap<String, String>,
    /// name → {var: image | null}; unlisted variables are fixed.
    #[serde(default)]
    pub endomorphisms: BTreeMap<String, BTreeMap<String, Option<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub field: FieldJson,
    pub dim: usize,
    pub matrix: Vec<Vec<String>>,
}

pub fn field_from_json(j: &FieldJson) -> Result<DiffField, DiffModError> {
    let vars = Vars::new(j.vars.iter().cloned());
    let mut d = DerivationTable::new(&vars, vec![RatFunc::zero(&vars); vars.len()])?;
    for (v, img) in &j.derivation {
        d = d.with(v, parse_ratfunc(img, &vars)?)?;
    }
    let mut field = DiffField::new(d);
    for (name, images) in &j.endomorphisms {
        let mut s = SubstEndo::identity(&vars);
        for (v, img) in images {
            s = s.set(v, img.as_deref().map(|e| parse_ratfunc(e, &vars)).transpose()?)?;
        }
        field.register(name, s)?;
    }
    Ok(field)
}

pub fn field_to_json(f: &DiffField) -> FieldJson {
    let vars = f.vars();
    let derivation = (0..vars.len())
        .filter(|&i| !f.derivation.image(i).is_zero())
        .map(|i| (vars.name(i).to_string(), f.derivation.image(i).to_string()))
        .collect();
    let endomorphisms = f
        .endos
        .iter()
        .map(|(name, e)| {
            let images = (0..vars.len())
                .filter(|&i| e.sigma.image(i) != Some(&RatFunc::var(vars, i)))
                .map(|i| (vars.name(i).to_string(), e.sigma.image(i).map(ToString::to_string)))
                .collect();
            (name.clone(), images)
        })
        .collect();
    FieldJson { vars: vars.names().to_vec(), derivation, endomorphisms }
}

pub fn module_from_json(j: &ModuleJson) -> Result<(DiffField, DiffModule), DiffModError> {
    let field = field_from_json(&j.field)?;
    let m = if j.dim == 0 { RfMatrix::zeros(0, 0, &RatFunc::zero(field.vars())) } else { field.parse_matrix(&j.matrix)? };
    if m.rows() != j.dim {
        return Err(DiffModError::Dimension(j.dim, m.rows()));
    }
    let module = DiffModule::new(&field, m)?;
    Ok((field, module))
}

pub fn module_to_json(field: &DiffField, m: &DiffModule) -> ModuleJson {
    ModuleJson { field: field_to_json(field), dim: m.dim(), matrix: matrix_to_strings(&m.matrix) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qx() -> DiffField {
        let v = Vars::new(["x"]);
        let mut f = DiffField::d_by(&v, "x").unwrap();
        let shift = SubstEndo::with_images(&v, [("x", parse_ratfunc("x + 1", &v).unwrap())]).unwrap();
        let scale = SubstEndo::with_images(&v, [("x", parse_ratfunc("3*x", &v).unwrap())]).unwrap();
        f.register("shift", shift).unwrap();
        f.register("scale", scale).unwrap();
        f
    }

    fn module(f: &DiffField, rows: &[&[&str]]) -> DiffModule {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        DiffModule::new(f, f.parse_matrix(&rows).unwrap()).unwrap()
    }

    #[test]
    fn factors_and_twists() {
        let f = qx();
        assert_eq!(f.endo("shift").unwrap().lambda.to_string(), "1");
        assert_eq!(f.endo("scale").unwrap().lambda.to_string(), "3");
        let m = module(&f, &[&["x"]]);
        assert_eq!(twist(&f, &m, "scale").unwrap().matrix().to_string(), "[[9*x]]");
        assert!(matches!(twist(&f, &m, "nope"), Err(DiffModError::UnknownEndomorphism(_))));
    }

    #[test]
    fn gauge_small_cases() {
        let f = qx();
        let m = module(&f, &[&["x", "1"], &["0", "x^2"]]);
        let id = RfMatrix::rf_identity(2, f.vars());
        assert_eq!(gauge(&f, &m, &id).unwrap(), m);
        let one = module(&f, &[&["x"]]);
        let c = f.parse_matrix(&[vec!["7"]]).unwrap();
        assert_eq!(gauge(&f, &one, &c).unwrap(), one);
        // c = x: x - 1/x
        let c = f.parse_matrix(&[vec!["x"]]).unwrap();
        let g = gauge(&f, &one, &c).unwrap();
        assert!(g.matrix()[(0, 0)].equals(&f.parse("x - 1/x").unwrap()).unwrap());
        assert!(verify_gauge_equiv(&f, &one, &g, &c).unwrap());
        let sing = f.parse_matrix(&[vec!["1", "x"], vec!["1", "x"]]).unwrap();
        assert_eq!(gauge(&f, &m, &sing), Err(DiffModError::Singular));
        // N = M + I with C = I
        let shifted = DiffModule::new(&f, m.matrix().add(&id).unwrap()).unwrap();
        assert!(!verify_gauge_equiv(&f, &m, &shifted, &id).unwrap());
    }

    #[test]
    fn gauge_composition_law() {
        let f = qx();
        let m = module(&f, &[&["x", "1"], &["1/x", "0"]]);
        let c = f.parse_matrix(&[vec!["1", "x"], vec!["0", "1"]]).unwrap();
        let c2 = f.parse_matrix(&[vec!["x", "0"], vec!["1", "2"]]).unwrap();
        let iterated = gauge(&f, &gauge(&f, &m, &c).unwrap(), &c2).unwrap();
        let once = gauge(&f, &m, &c.mul(&c2).unwrap()).unwrap();
        assert!(iterated.matrix().equals(once.matrix()).unwrap());
        let other = gauge(&f, &m, &c2.mul(&c).unwrap()).unwrap();
        assert!(!iterated.matrix().equals(other.matrix()).unwrap());
    }

    #[test]
    fn constructions() {
        let f = qx();
        let m = module(&f, &[&["x", "1"], &["0", "2"]]);
        let n = module(&f, &[&["x^2"]]);
        assert_eq!(dual(&dual(&m)), m);
        let triv = DiffModule::trivial(&f, 1);
        assert_eq!(tensor(&f, &m, &triv).unwrap(), m);
        let a = module(&f, &[&["x"]]);
        assert_eq!(tensor(&f, &a, &n).unwrap().matrix().to_string(), "[[x^2 + x]]");
        let s = direct_sum(&f, &m, &n).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.matrix()[(0, 2)].is_zero());
        // dual of a tensor is the tensor of duals
        assert_eq!(dual(&tensor(&f, &m, &n).unwrap()), tensor(&f, &dual(&m), &dual(&n)).unwrap());
        // M⊗N and N⊗M differ by the swap permutation
        let mn = tensor(&f, &m, &module(&f, &[&["1", "x"], &["x", "0"]])).unwrap();
        let nm = tensor(&f, &module(&f, &[&["1", "x"], &["x", "0"]]), &m).unwrap();
        let p = swap_permutation(f.vars(), 2, 2);
        let pinv = mat_inverse(&p).unwrap();
        assert_eq!(p.mul(mn.matrix()).unwrap().mul(&pinv).unwrap(), *nm.matrix());
    }

    #[test]
    fn composite_registration() {
        let mut f = qx();
        let c = f.register_composite("shift.scale", "shift", "scale").unwrap().clone();
        // x ↦ 3x ↦ 3(x + 1)
        assert_eq!(c.sigma.apply(&f.parse("x").unwrap()).unwrap(), f.parse("3*x + 3").unwrap());
        assert_eq!(c.lambda, commutation_factor(&c.sigma, f.derivation()).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f = qx();
        let m = module(&f, &[&["x", "1/(x+1)"], &["0", "2"]]);
        let j = serde_json::to_string(&module_to_json(&f, &m)).unwrap();
        let (f2, m2) = module_from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(f2, f);
        assert_eq!(m2, m);
    }
}
