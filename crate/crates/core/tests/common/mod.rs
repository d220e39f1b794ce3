#![allow(dead_code)]

use proptest::prelude::*;
use tannakit::field::{rational::rat, Monomial, MultiPoly, RatFunc, RfMatrix, Vars};

/// Coefficients in −3..=3 on the monomials of total degree ≤ 2.
pub fn poly(vars: Vars) -> impl Strategy<Value = MultiPoly> {
    let n = vars.len();
    let mut monos = vec![vec![0u32; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        monos.push(e.clone());
        for j in i..n {
            let mut f = e.clone();
            f[j] += 1;
            monos.push(f);
        }
    }
    prop::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
        MultiPoly::from_terms(
            &vars,
            monos.iter().zip(cs).map(|(m, c)| (Monomial::from_exps(m.clone()), rat(c, 1))),
        )
    })
}

pub fn nonzero_poly(vars: Vars) -> impl Strategy<Value = MultiPoly> {
    poly(vars).prop_map(|p| if p.is_zero() { MultiPoly::one(p.vars()) } else { p })
}

pub fn ratfunc(vars: Vars) -> impl Strategy<Value = RatFunc> {
    (poly(vars.clone()), nonzero_poly(vars)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

pub fn nonzero_ratfunc(vars: Vars) -> impl Strategy<Value = RatFunc> {
    (nonzero_poly(vars.clone()), nonzero_poly(vars)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

pub fn matrix(vars: Vars, n: usize) -> impl Strategy<Value = RfMatrix> {
    prop::collection::vec(ratfunc(vars.clone()), n * n)
        .prop_map(move |es| RfMatrix::from_fn(n, n, &RatFunc::zero(&vars), |i, j| es[i * n + j].clone()))
}

pub fn invertible(vars: Vars, n: usize) -> impl Strategy<Value = RfMatrix> {
    matrix(vars, n).prop_filter("singular", |m| !m.det().unwrap().is_zero())
}

/// Polynomial entries `a + b·x₀` with `a, b` in −2..=2; keeps nested
/// inverses small.
pub fn linear_matrix(vars: Vars, n: usize) -> impl Strategy<Value = RfMatrix> {
    prop::collection::vec((-2i64..=2, -2i64..=2), n * n).prop_map(move |es| {
        let x = RatFunc::var(&vars, 0);
        RfMatrix::from_fn(n, n, &RatFunc::zero(&vars), |i, j| {
            let (a, b) = es[i * n + j];
            &RatFunc::constant(&vars, rat(a, 1)) + &x.scale(&rat(b, 1))
        })
    })
}

pub fn linear_invertible(vars: Vars, n: usize) -> impl Strategy<Value = RfMatrix> {
    linear_matrix(vars, n).prop_filter("singular", |m| !m.det().unwrap().is_zero())
}
