//! Finite-dimensional comodules over `B`: `ρ(e_j) = Σ_i e_i ⊗ ρ_{ij}`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::field::Rational;
use crate::semigroup::Word;

use super::gln::{antipode, comultiply, counit, det, x};
use super::poly::{GPoly, GRing};
use super::{gpoly_apply, HopfError};

#[derive(Clone, Debug, PartialEq)]
pub struct Comodule {
    ring: Arc<GRing>,
    rho: Vec<Vec<GPoly>>,
}

impl Comodule {
    pub fn new(ring: &Arc<GRing>, rho: Vec<Vec<GPoly>>) -> Result<Self, HopfError> {
        let d = rho.len();
        if rho.iter().any(|r| r.len() != d) {
            return Err(HopfError::Shape("coaction matrix is not square".into()));
        }
        if rho.iter().flatten().any(|f| f.ring() != ring) {
            return Err(HopfError::PresentationMismatch);
        }
        Ok(Comodule { ring: ring.clone(), rho })
    }

    pub fn dim(&self) -> usize {
        self.rho.len()
    }

    pub fn ring(&self) -> &Arc<GRing> {
        &self.ring
    }

    pub fn rho(&self) -> &[Vec<GPoly>] {
        &self.rho
    }

    pub fn entry(&self, i: usize, j: usize) -> &GPoly {
        &self.rho[i][j]
    }

    /// Replaces one entry, e.g. to corrupt a comodule in tests.
    pub fn with_entry(mut self, i: usize, j: usize, f: GPoly) -> Self {
        self.rho[i][j] = f;
        self
    }
}

/// `ρ = (x_{ij,w})`, the standard representation twisted by `w`.
pub fn standard_comodule(ring: &Arc<GRing>, w: &Word) -> Comodule {
    let n = ring.n;
    let rho = (1..=n).map(|i| (1..=n).map(|j| x(ring, i, j, w)).collect()).collect();
    Comodule { ring: ring.clone(), rho }
}

pub fn trivial_comodule(ring: &Arc<GRing>) -> Comodule {
    Comodule { ring: ring.clone(), rho: vec![vec![GPoly::one(ring)]] }
}

pub fn det_comodule(ring: &Arc<GRing>, w: &Word) -> Comodule {
    Comodule { ring: ring.clone(), rho: vec![vec![det(ring, w)]] }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// `(i, j)` with `Δ(ρ_{ij}) ≠ Σ_k ρ_{ik} ⊗ ρ_{kj}`.
    pub coassociativity: Vec<(usize, usize)>,
    /// `(i, j)` with `ε(ρ_{ij}) ≠ δ_{ij}`.
    pub counit: Vec<(usize, usize)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.coassociativity.is_empty() && self.counit.is_empty()
    }
}

/// `(ρ⊗id)∘ρ = (id⊗Δ)∘ρ` and `(id⊗ε)∘ρ = id`, entry by entry.
pub fn comodule_axioms(v: &Comodule) -> Result<AxiomReport, HopfError> {
    let ring = &v.ring;
    let d = v.dim();
    let mut rep = AxiomReport { coassociativity: Vec::new(), counit: Vec::new() };
    for i in 0..d {
        for j in 0..d {
            let lhs = comultiply(&v.rho[i][j])?;
            let mut rhs = GPoly::zero(ring);
            for k in 0..d {
                let right = v.rho[k][j].rename(|ind| ind.on_side(1));
                rhs = rhs.add(&v.rho[i][k].mul(&right));
            }
            if lhs != rhs {
                rep.coassociativity.push((i, j));
            }
            let want = if i == j { Rational::one() } else { Rational::zero() };
            if counit(&v.rho[i][j])? != want {
                rep.counit.push((i, j));
            }
        }
    }
    Ok(rep)
}

fn same_ring(v: &Comodule, w: &Comodule) -> Result<(), HopfError> {
    if v.ring != w.ring {
        Err(HopfError::PresentationMismatch)
    } else {
        Ok(())
    }
}

/// `ρ_{(i,k),(j,l)} = ρ^V_{ij}·ρ^W_{kl}` on the Kronecker index grid.
pub fn tensor(v: &Comodule, w: &Comodule) -> Result<Comodule, HopfError> {
    same_ring(v, w)?;
    let (p, q) = (v.dim(), w.dim());
    let rho = (0..p * q)
        .map(|r| (0..p * q).map(|c| v.rho[r / q][c / q].mul(&w.rho[r % q][c % q])).collect())
        .collect();
    Ok(Comodule { ring: v.ring.clone(), rho })
}

/// `ρ^∨_{ij} = S(ρ_{ji})`.
pub fn dual(v: &Comodule) -> Result<Comodule, HopfError> {
    let d = v.dim();
    let rho = (0..d).map(|i| (0..d).map(|j| antipode(&v.rho[j][i])).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
    Ok(Comodule { ring: v.ring.clone(), rho })
}

pub fn direct_sum(v: &Comodule, w: &Comodule) -> Result<Comodule, HopfError> {
    same_ring(v, w)?;
    let (p, q) = (v.dim(), w.dim());
    let zero = GPoly::zero(&v.ring);
    let rho = (0..p + q)
        .map(|i| {
            (0..p + q)
                .map(|j| match (i < p, j < p) {
                    (true, true) => v.rho[i][j].clone(),
                    (false, false) => w.rho[i - p][j - p].clone(),
                    _ => zero.clone(),
                })
                .collect()
        })
        .collect();
    Ok(Comodule { ring: v.ring.clone(), rho })
}

/// `^gV`: entries `ρ_{ij} ↦ g·ρ_{ij}`.
pub fn twist_comodule(v: &Comodule, g: &Word) -> Result<Comodule, HopfError> {
    let rho = v
        .rho
        .iter()
        .map(|r| r.iter().map(|f| gpoly_apply(g, f)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    Ok(Comodule { ring: v.ring.clone(), rho })
}

/// The coefficient `u(ρ(v)) = Σ_{ij} u_i·v_j·ρ_{ij}`.
pub fn matrix_coefficient(v: &Comodule, vec: &[Rational], covec: &[Rational]) -> Result<GPoly, HopfError> {
    let d = v.dim();
    if vec.len() != d || covec.len() != d {
        return Err(HopfError::Shape(format!("vectors of length {} and {} for dimension {d}", vec.len(), covec.len())));
    }
    let mut acc = GPoly::zero(&v.ring);
    for i in 0..d {
        for j in 0..d {
            let c = &covec[i] * &vec[j];
            if !c.is_zero() {
                acc = acc.add(&v.rho[i][j].scale(&c));
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::Ind;
    use crate::field::rational::int;
    use crate::semigroup::AbelianPresentation;

    fn ring(n: usize, pres: AbelianPresentation) -> Arc<GRing> {
        GRing::new(Arc::new(pres), n)
    }

    #[test]
    fn standard_and_constructions_are_comodules() {
        let r = ring(2, AbelianPresentation::new(1, vec![2]).unwrap());
        let e = Word::identity(&r.pres);
        let a = r.word(&[1, 0]).unwrap();
        let v = standard_comodule(&r, &e);
        let va = standard_comodule(&r, &a);
        assert!(comodule_axioms(&v).unwrap().passed());
        for c in [
            tensor(&v, &va).unwrap(),
            dual(&v).unwrap(),
            direct_sum(&v, &va).unwrap(),
            tensor(&dual(&va).unwrap(), &det_comodule(&r, &e)).unwrap(),
        ] {
            assert!(comodule_axioms(&c).unwrap().passed());
        }
        let bad = v.clone().with_entry(0, 1, GPoly::zero(&r));
        let rep = comodule_axioms(&bad).unwrap();
        assert!(!rep.passed());
        assert!(rep.coassociativity.contains(&(0, 0)));
    }

    #[test]
    fn small_examples() {
        let r = ring(2, AbelianPresentation::free(1));
        let e = Word::identity(&r.pres);
        let v = standard_comodule(&r, &e);
        assert_eq!(tensor(&v, &trivial_comodule(&r)).unwrap(), v);
        // the dual of det is D
        let dd = dual(&det_comodule(&r, &e)).unwrap();
        assert_eq!(dd.entry(0, 0), &GPoly::ind(&r, Ind::d(&e)));

        let r1 = ring(1, AbelianPresentation::free(1));
        let e1 = Word::identity(&r1.pres);
        let s = standard_comodule(&r1, &e1);
        assert_eq!(tensor(&s, &s).unwrap().entry(0, 0), &x(&r1, 1, 1, &e1).pow(2));
    }

    #[test]
    fn twists() {
        let r = ring(2, AbelianPresentation::new(0, vec![2]).unwrap());
        let e = Word::identity(&r.pres);
        let a = Word::generator(&r.pres, 1).unwrap();
        let v = standard_comodule(&r, &e);
        assert_eq!(twist_comodule(&v, &e).unwrap(), v);
        let va = twist_comodule(&v, &a).unwrap();
        assert_eq!(va, standard_comodule(&r, &a));
        assert!(comodule_axioms(&va).unwrap().passed());
        assert_eq!(twist_comodule(&va, &a).unwrap(), v);
        // the twisted coefficient is the twist of the coefficient
        let (u, w) = ([int(1), int(2)], [int(-1), int(3)]);
        assert_eq!(
            matrix_coefficient(&va, &u, &w).unwrap(),
            gpoly_apply(&a, &matrix_coefficient(&v, &u, &w).unwrap()).unwrap()
        );
    }
}
