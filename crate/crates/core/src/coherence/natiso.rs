use crate::field::{mat_inverse, RatFunc, RfMatrix, Vars};

use super::category::{EvalCategory, Table};
use super::CoherenceError;

/// Natural isomorphism between two composites of block functors.
///
/// Both composites send `X` to `K^k ⊕ (twisted X)` with the same total pad
/// `k`; the component at `X` is `pad ⊕ scalar·id_X`. `src` and `tgt` are the
/// letter strings of the two composites.
#[derive(Clone, Debug, PartialEq)]
pub struct NatIso {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub pad: RfMatrix,
    pub scalar: RatFunc,
}

impl NatIso {
    pub fn new(src: Vec<usize>, tgt: Vec<usize>, pad: RfMatrix, scalar: RatFunc) -> Result<Self, CoherenceError> {
        if !pad.is_square() {
            return Err(CoherenceError::Shape(format!("pad block is {}x{}", pad.rows(), pad.cols())));
        }
        if pad.vars() != scalar.vars() {
            return Err(CoherenceError::Field(crate::field::FieldError::VariableMismatch));
        }
        Ok(NatIso { src, tgt, pad, scalar })
    }

    pub fn identity(vars: &Vars, letters: Vec<usize>, pad: usize) -> Self {
        NatIso { src: letters.clone(), tgt: letters, pad: RfMatrix::rf_identity(pad, vars), scalar: RatFunc::one(vars) }
    }

    /// `λ·id` on every component.
    pub fn scalar(src: Vec<usize>, tgt: Vec<usize>, pad: usize, lambda: RatFunc) -> Self {
        NatIso { src, tgt, pad: RfMatrix::scalar(pad, &lambda), scalar: lambda }
    }

    pub fn vars(&self) -> &Vars {
        self.scalar.vars()
    }

    pub fn pad_dim(&self) -> usize {
        self.pad.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.pad.is_identity() && self.scalar.is_one()
    }

    /// Full component at an object of dimension `dim`.
    pub fn component(&self, dim: usize) -> RfMatrix {
        self.pad.direct_sum(&RfMatrix::scalar(dim, &self.scalar))
    }

    /// Vertical composite `next ∘ self`.
    pub fn then(&self, next: &NatIso) -> Result<NatIso, CoherenceError> {
        if self.tgt != next.src {
            return Err(CoherenceError::Shape(format!(
                "cannot compose: target {:?} vs source {:?}",
                self.tgt, next.src
            )));
        }
        Ok(NatIso {
            src: self.src.clone(),
            tgt: next.tgt.clone(),
            pad: next.pad.mul(&self.pad)?,
            scalar: &next.scalar * &self.scalar,
        })
    }

    pub fn inverse(&self) -> Result<NatIso, CoherenceError> {
        let pad = mat_inverse(&self.pad).map_err(|_| CoherenceError::NotInvertible("pad block is singular".into()))?;
        let scalar = self.scalar.inv().map_err(|_| CoherenceError::NotInvertible("scalar is zero".into()))?;
        Ok(NatIso { src: self.tgt.clone(), tgt: self.src.clone(), pad, scalar })
    }

    pub fn is_invertible(&self) -> Result<bool, CoherenceError> {
        Ok(!self.scalar.is_zero() && !self.pad.det()?.is_zero())
    }

    /// `id_H ∘ η`: the component at `X` is `H(η_X)`.
    pub fn whisker_left(&self, table: Table<'_>, h: &[usize]) -> Result<NatIso, CoherenceError> {
        if h.is_empty() {
            return Ok(self.clone());
        }
        let vars = self.vars();
        let pad = RfMatrix::rf_identity(table.pad(h), vars).direct_sum(&table.twist_matrix(h, &self.pad)?);
        let scalar = table.twist_entry(h, &self.scalar)?;
        Ok(NatIso { src: cat(h, &self.src), tgt: cat(h, &self.tgt), pad, scalar })
    }

    /// `η ∘ id_H`: the component at `X` is `η_{H(X)}`.
    pub fn whisker_right(&self, table: Table<'_>, h: &[usize]) -> Result<NatIso, CoherenceError> {
        if h.is_empty() {
            return Ok(self.clone());
        }
        let pad = self.pad.direct_sum(&RfMatrix::scalar(table.pad(h), &self.scalar));
        Ok(NatIso { src: cat(&self.src, h), tgt: cat(&self.tgt, h), pad, scalar: self.scalar.clone() })
    }

    /// Apply the 1-based letter map to both strings.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> NatIso {
        NatIso {
            src: self.src.iter().map(|&l| f(l)).collect(),
            tgt: self.tgt.iter().map(|&l| f(l)).collect(),
            pad: self.pad.clone(),
            scalar: self.scalar.clone(),
        }
    }
}

fn cat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// First object at which the components of `a` and `b` differ, with the
/// residual `a_X − b_X`.
pub fn first_difference(
    cat: &EvalCategory,
    a: &NatIso,
    b: &NatIso,
) -> Result<Option<(usize, RfMatrix)>, CoherenceError> {
    if a.pad_dim() != b.pad_dim() {
        return Err(CoherenceError::Shape(format!("pad {} vs {}", a.pad_dim(), b.pad_dim())));
    }
    let pads_agree = a.pad == b.pad;
    let scalars_agree = a.scalar == b.scalar;
    if pads_agree && scalars_agree {
        return Ok(None);
    }
    for (k, o) in cat.objects().iter().enumerate() {
        if !pads_agree || o.dim > 0 {
            return Ok(Some((k, a.component(o.dim).sub(&b.component(o.dim))?)));
        }
    }
    Ok(None)
}

/// Checks `η_Y ∘ F(φ) = G(φ) ∘ η_X` for every generating morphism, where the
/// source composite is read in `src_table` and the target in `tgt_table`.
pub fn naturality_failures(
    cat: &EvalCategory,
    iso: &NatIso,
    src_table: Table<'_>,
    tgt_table: Table<'_>,
) -> Result<Vec<(String, RfMatrix)>, CoherenceError> {
    let mut out = Vec::new();
    for phi in cat.morphisms() {
        let dx = cat.objects()[phi.src].dim;
        let dy = cat.objects()[phi.tgt].dim;
        let lhs = iso.component(dy).mul(&src_table.on_morphism(&iso.src, &phi.matrix)?)?;
        let rhs = tgt_table.on_morphism(&iso.tgt, &phi.matrix)?.mul(&iso.component(dx))?;
        if lhs != rhs {
            out.push((phi.name.clone(), lhs.sub(&rhs)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::category::BlockFunctor;
    use super::*;
    use crate::field::{parse_ratfunc, SubstEndo};

    #[test]
    fn whiskering_shapes_and_twists() {
        let v = Vars::new(["t"]);
        let t = parse_ratfunc("t", &v).unwrap();
        let sigma = SubstEndo::with_images(&v, [("t", parse_ratfunc("-t", &v).unwrap())]).unwrap();
        let table = vec![BlockFunctor::pad(1), BlockFunctor::twisted(0, sigma)];
        let tb = Table(&table);
        let eta = NatIso::scalar(vec![1], vec![1], 1, t.clone());
        let l = eta.whisker_left(tb, &[2]).unwrap();
        assert_eq!(l.src, vec![2, 1]);
        assert_eq!(l.scalar, -t.clone());
        assert_eq!(l.pad, RfMatrix::scalar(1, &-t.clone()));
        let r = eta.whisker_left(tb, &[1]).unwrap();
        assert_eq!(r.pad_dim(), 2);
        assert_eq!(r.pad[(0, 0)], RatFunc::one(&v));
        assert_eq!(r.pad[(1, 1)], t);
        let rr = eta.whisker_right(tb, &[1, 2]).unwrap();
        assert_eq!(rr.src, vec![1, 1, 2]);
        assert_eq!(rr.pad, RfMatrix::scalar(2, &t));
    }

    #[test]
    fn composition_and_inverse() {
        let v = Vars::empty();
        let pad = crate::field::matrix_from_strings(&v, &[vec!["1", "1"], vec!["0", "-1"]]).unwrap();
        let a = NatIso::new(vec![2, 1], vec![1, 2], pad, RatFunc::one(&v)).unwrap();
        let id = a.then(&a.inverse().unwrap()).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.src, vec![2, 1]);
        assert!(a.then(&a).is_err());
    }
}
