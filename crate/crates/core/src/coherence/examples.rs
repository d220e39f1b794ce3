//! Small fixed action data: three commuting pad functors with matrix
//! exchanges, and an order-two twist with a scalar torsion isomorphism.

use std::sync::Arc;

use crate::field::{matrix_from_strings, parse_ratfunc, RatFunc, RfMatrix, SubstEndo, Vars};
use crate::semigroup::AbelianPresentation;

use super::action::ActionData;
use super::category::{BlockFunctor, EvalCategory};
use super::CoherenceError;

/// `M₁ = M₂ = [[1,1],[0,−1]]`, `M₃ = [[−1,1],[0,1]]`. Each squares to the
/// identity, but they fail the braid relation.
pub fn counterexample_matrices() -> [RfMatrix; 3] {
    let v = Vars::empty();
    let m = |rows: [[&str; 2]; 2]| matrix_from_strings(&v, &rows.map(|r| r.to_vec())).expect("constant matrix");
    [m([["1", "1"], ["0", "-1"]]), m([["1", "1"], ["0", "-1"]]), m([["-1", "1"], ["0", "1"]])]
}

/// `T(a_i)(V) = ℚ ⊕ V` for three free generators on vector spaces of
/// dimension 1 and 2, with exchanges `i_{a3,a2} = M₁`, `i_{a3,a1} = M₂`,
/// `i_{a2,a1} = M₃` acting on the pad `ℚ²`.
pub fn pad_exchange_action(m: &[RfMatrix; 3]) -> Result<ActionData, CoherenceError> {
    let v = Vars::empty();
    let cat = Arc::new(EvalCategory::with_dims(&v, &[1, 2])?);
    let pres = Arc::new(AbelianPresentation::free(3));
    let mut d = ActionData::new(cat, pres, vec![BlockFunctor::pad(1); 3])?;
    let one = RatFunc::one(&v);
    d.set_exchange(3, 2, m[0].clone(), one.clone())?;
    d.set_exchange(3, 1, m[1].clone(), one.clone())?;
    d.set_exchange(2, 1, m[2].clone(), one)?;
    Ok(d)
}

pub fn counterexample() -> Result<ActionData, CoherenceError> {
    pad_exchange_action(&counterexample_matrices())
}

/// The same shape with every exchange the identity.
pub fn identity_exchanges() -> Result<ActionData, CoherenceError> {
    let id = RfMatrix::identity(2, &RatFunc::one(&Vars::empty()));
    pad_exchange_action(&[id.clone(), id.clone(), id])
}

/// ℤ/2 acting on `ℚ(t)`-spaces by `t ↦ −t`, with `T(a)² ≅ id` given by the
/// scalar `b`. Coherent iff `σ(b) = b`.
pub fn order_two_action(b: &str) -> Result<ActionData, CoherenceError> {
    let v = Vars::new(["t"]);
    let sigma = SubstEndo::with_images(&v, [("t", parse_ratfunc("-t", &v)?)])?;
    let cat = Arc::new(EvalCategory::with_dims(&v, &[1, 2])?);
    let pres = Arc::new(AbelianPresentation::new(0, vec![2])?);
    let mut d = ActionData::new(cat, pres, vec![BlockFunctor::twisted(0, sigma)])?;
    d.set_torsion(1, parse_ratfunc(b, &v)?)?;
    Ok(d)
}
