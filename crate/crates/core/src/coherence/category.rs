use crate::field::{RatFunc, RfMatrix, SubstEndo, Vars};

use super::CoherenceError;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Object {
    pub name: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenMorphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    /// `dim(tgt) × dim(src)`.
    pub matrix: RfMatrix,
}

/// A finite skeleton of `Vect_K`, `K = ℚ(vars)`: named objects of fixed
/// dimension and a list of generating morphisms. Natural transformations are
/// checked against the generating morphisms only.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalCategory {
    vars: Vars,
    objects: Vec<Object>,
    morphisms: Vec<GenMorphism>,
}

impl EvalCategory {
    pub fn new(vars: Vars, objects: Vec<Object>, morphisms: Vec<GenMorphism>) -> Result<Self, CoherenceError> {
        if objects.is_empty() {
            return Err(CoherenceError::Invalid("category needs at least one object".into()));
        }
        for m in &morphisms {
            let (s, t) = match (objects.get(m.src), objects.get(m.tgt)) {
                (Some(s), Some(t)) => (s, t),
                _ => return Err(CoherenceError::Invalid(format!("morphism `{}` has an unknown endpoint", m.name))),
            };
            if m.matrix.rows() != t.dim || m.matrix.cols() != s.dim {
                return Err(CoherenceError::Shape(format!(
                    "morphism `{}` is {}x{}, expected {}x{}",
                    m.name,
                    m.matrix.rows(),
                    m.matrix.cols(),
                    t.dim,
                    s.dim
                )));
            }
            if m.matrix.vars() != &vars {
                return Err(CoherenceError::Field(crate::field::FieldError::VariableMismatch));
            }
        }
        Ok(EvalCategory { vars, objects, morphisms })
    }

    /// Objects `X1, X2, …` of the given dimensions over ℚ(vars), no morphisms.
    pub fn with_dims(vars: &Vars, dims: &[usize]) -> Result<Self, CoherenceError> {
        let objects = dims.iter().enumerate().map(|(k, &d)| Object { name: format!("X{}", k + 1), dim: d }).collect();
        Self::new(vars.clone(), objects, Vec::new())
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[GenMorphism] {
        &self.morphisms
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.name == name)
    }

    pub fn zero(&self) -> RatFunc {
        RatFunc::zero(&self.vars)
    }

    pub fn one(&self) -> RatFunc {
        RatFunc::one(&self.vars)
    }
}

/// `V ↦ K^pad ⊕ ^σV`, `φ ↦ id_pad ⊕ σ(φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockFunctor {
    pub pad: usize,
    pub twist: Option<SubstEndo>,
}

impl BlockFunctor {
    pub fn pad(k: usize) -> Self {
        BlockFunctor { pad: k, twist: None }
    }

    pub fn twisted(k: usize, sigma: SubstEndo) -> Self {
        BlockFunctor { pad: k, twist: if sigma.is_identity() { None } else { Some(sigma) } }
    }

    pub fn twist_entry(&self, f: &RatFunc) -> Result<RatFunc, CoherenceError> {
        match &self.twist {
            Some(s) => Ok(s.apply(f)?),
            None => Ok(f.clone()),
        }
    }

    pub fn twist_matrix(&self, m: &RfMatrix) -> Result<RfMatrix, CoherenceError> {
        match &self.twist {
            Some(s) => Ok(m.try_map(m.zero_elem(), |x| s.apply(x))?),
            None => Ok(m.clone()),
        }
    }

    /// `F(φ)` for a morphism matrix.
    pub fn on_morphism(&self, m: &RfMatrix) -> Result<RfMatrix, CoherenceError> {
        Ok(RfMatrix::rf_identity(self.pad, m.vars()).direct_sum(&self.twist_matrix(m)?))
    }
}

/// Helpers for composites `T(l₁)∘…∘T(l_p)` given a functor table indexed by
/// 1-based letters.
#[derive(Clone, Copy)]
pub struct Table<'a>(pub &'a [BlockFunctor]);

impl<'a> Table<'a> {
    pub fn get(&self, letter: usize) -> &'a BlockFunctor {
        &self.0[letter - 1]
    }

    pub fn pad(&self, letters: &[usize]) -> usize {
        letters.iter().map(|&l| self.get(l).pad).sum()
    }

    fn all_untwisted(&self, letters: &[usize]) -> bool {
        letters.iter().all(|&l| self.get(l).twist.is_none())
    }

    /// `σ_{l₁}(σ_{l₂}(…σ_{l_p}(f)))`.
    pub fn twist_entry(&self, letters: &[usize], f: &RatFunc) -> Result<RatFunc, CoherenceError> {
        let mut out = f.clone();
        for &l in letters.iter().rev() {
            out = self.get(l).twist_entry(&out)?;
        }
        Ok(out)
    }

    pub fn twist_matrix(&self, letters: &[usize], m: &RfMatrix) -> Result<RfMatrix, CoherenceError> {
        if self.all_untwisted(letters) {
            return Ok(m.clone());
        }
        let mut out = m.clone();
        for &l in letters.iter().rev() {
            out = self.get(l).twist_matrix(&out)?;
        }
        Ok(out)
    }

    /// The composite applied to a morphism.
    pub fn on_morphism(&self, letters: &[usize], m: &RfMatrix) -> Result<RfMatrix, CoherenceError> {
        let twisted = self.twist_matrix(letters, m)?;
        Ok(RfMatrix::rf_identity(self.pad(letters), m.vars()).direct_sum(&twisted))
    }
}

/// Checks `F(id) = id` and `F(ψ∘φ) = F(ψ)∘F(φ)` on generating morphisms, for
/// every composable pair.
pub fn check_functor_laws(cat: &EvalCategory, f: &BlockFunctor) -> Result<Vec<String>, CoherenceError> {
    let mut bad = Vec::new();
    for o in cat.objects() {
        let id = RfMatrix::rf_identity(o.dim, cat.vars());
        if !f.on_morphism(&id)?.is_identity() {
            bad.push(format!("F(id_{}) is not the identity", o.name));
        }
    }
    for phi in cat.morphisms() {
        for psi in cat.morphisms().iter().filter(|p| p.src == phi.tgt) {
            let lhs = f.on_morphism(&psi.matrix.mul(&phi.matrix)?)?;
            let rhs = f.on_morphism(&psi.matrix)?.mul(&f.on_morphism(&phi.matrix)?)?;
            if lhs != rhs {
                bad.push(format!("F({}∘{}) ≠ F({})∘F({})", psi.name, phi.name, psi.name, phi.name));
            }
        }
    }
    Ok(bad)
}
