use num_traits::Zero;

use crate::field::{nullspace, rational::is_integer, Matrix, MultiPoly, RatFunc, Rational, RfMatrix, Vars};

use super::{DiffField, DiffModError, DiffModule};

/// The variable `x` with `∂x = 1`; every other variable must be a constant.
fn ansatz_var(field: &DiffField) -> Result<usize, DiffModError> {
    let d = field.derivation();
    let vars = field.vars();
    let mut found = None;
    for i in 0..vars.len() {
        let img = d.image(i);
        if img.is_one() && found.is_none() {
            found = Some(i);
        } else if !img.is_zero() {
            return Err(DiffModError::Invalid(format!(
                "the gauge ansatz needs ∂ = d/dx with constant parameters, but ∂{} = {img}",
                vars.name(i)
            )));
        }
    }
    found.ok_or_else(|| DiffModError::Invalid("no variable with ∂x = 1".into()))
}

/// Searches for `C` with `gauge(M, C) = N`, i.e. `∂C = A·C − C·B`, among
/// matrices whose entries are `p(x)/denom` where `p` has coefficients in the
/// constant subfield and `deg_x p ≤ deg_bound + deg_x denom` (so that
/// `deg_bound` bounds the polynomial part of each entry).
///
/// The system is linear in the coefficients of the `p`s; it is cleared of
/// denominators, split by powers of `x`, and solved exactly. Returns an
/// invertible member of the solution space, or `None` when the ansatz has no
/// invertible solution.
pub fn solve_gauge(
    field: &DiffField,
    m: &DiffModule,
    n: &DiffModule,
    deg_bound: u32,
    denom: &MultiPoly,
) -> Result<Option<RfMatrix>, DiffModError> {
    if m.dim() != n.dim() {
        return Err(DiffModError::Dimension(m.dim(), n.dim()));
    }
    if denom.is_zero() {
        return Err(DiffModError::Invalid("zero denominator".into()));
    }
    let vars = field.vars().clone();
    if denom.vars() != &vars || m.matrix().vars() != &vars || n.matrix().vars() != &vars {
        return Err(DiffModError::FieldMismatch);
    }
    let x = ansatz_var(field)?;
    let d = m.dim();
    if d == 0 {
        return Ok(Some(RfMatrix::zeros(0, 0, &RatFunc::zero(&vars))));
    }
    let top = deg_bound + denom.degree_in(x).unwrap_or(0);
    let (a, b) = (m.matrix(), n.matrix());
    let den = RatFunc::from_poly(denom.clone());
    let xv = RatFunc::var(&vars, x);

    // unknown u = ((i*d + j) * (top+1) + k) sits in entry (i, j) as x^k/denom
    let per_entry = top as usize + 1;
    let nunk = d * d * per_entry;
    let basis: Vec<(RatFunc, RatFunc)> = (0..per_entry)
        .map(|k| {
            let f = &xv.pow(k as i32).expect("nonnegative power") / &den;
            let df = field.derivation().derive(&f);
            (f, df)
        })
        .collect();

    let zero = RatFunc::zero(&vars);
    let mut rows: Vec<Vec<MultiPoly>> = Vec::new();
    for r in 0..d {
        for s in 0..d {
            // residual entry (r, s) as a linear form in the unknowns
            let mut coeffs = vec![zero.clone(); nunk];
            for i in 0..d {
                for j in 0..d {
                    if r != i && s != j {
                        continue;
                    }
                    for (k, (f, df)) in basis.iter().enumerate() {
                        let u = (i * d + j) * per_entry + k;
                        let mut c = zero.clone();
                        if r == i && s == j {
                            c = &c + df;
                        }
                        if s == j {
                            c = &c - &(&a[(r, i)] * f);
                        }
                        if r == i {
                            c = &c + &(f * &b[(j, s)]);
                        }
                        coeffs[u] = c;
                    }
                }
            }
            let l = crate::field::linalg_common_denominator(&vars, coeffs.iter().map(RatFunc::denom));
            let cleared: Vec<MultiPoly> = coeffs
                .iter()
                .map(|c| {
                    let k = l.div_exact(c.denom()).expect("common multiple");
                    c.numer() * &k
                })
                .collect();
            let split: Vec<Vec<MultiPoly>> = cleared.iter().map(|p| p.coefficients_in(x)).collect();
            let height = split.iter().map(Vec::len).max().unwrap_or(0);
            for e in 0..height {
                let row: Vec<MultiPoly> =
                    split.iter().map(|c| c.get(e).cloned().unwrap_or_else(|| MultiPoly::zero(&vars))).collect();
                if row.iter().any(|p| !p.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..nunk)
            .map(|u| (0..nunk).map(|v| if u == v { RatFunc::one(&vars) } else { zero.clone() }).collect())
            .collect()
    } else {
        nullspace(&Matrix::from_rows(rows, &MultiPoly::zero(&vars))?)?
    };
    if kernel.is_empty() {
        return Ok(None);
    }
    let build = |w: &[RatFunc]| -> RfMatrix {
        RfMatrix::from_fn(d, d, &zero, |i, j| {
            let mut acc = zero.clone();
            for (k, (f, _)) in basis.iter().enumerate() {
                let c = &w[(i * d + j) * per_entry + k];
                if !c.is_zero() {
                    acc = &acc + &(c * f);
                }
            }
            acc
        })
    };
    for w in candidates(&vars, &kernel) {
        let c = build(&w);
        if !c.det()?.is_zero() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Basis vectors first, then a few integer combinations of all of them.
fn candidates(vars: &Vars, kernel: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let mut out: Vec<Vec<RatFunc>> = kernel.to_vec();
    if kernel.len() > 1 {
        for shift in 1..=4i64 {
            let mut acc = vec![RatFunc::zero(vars); kernel[0].len()];
            for (t, v) in kernel.iter().enumerate() {
                let w = RatFunc::constant(vars, Rational::from_integer((shift.pow(t as u32 % 8) + t as i64).into()));
                for (a, b) in acc.iter_mut().zip(v) {
                    *a = &*a + &(&w * b);
                }
            }
            out.push(acc);
        }
    }
    out
}

/// Over ℚ(x, E) with `∂x = 1`, `∂E = E`: a solution of `∂c = κ·c` of the
/// form `r(x)·E^j`. Then `r′/r = κ − j`, and a nonzero constant is never the
/// logarithmic derivative of a rational function, so `j = κ` must be an
/// integer and `r` is constant.
pub fn hyperexp_criterion(kappa: &Rational) -> Option<RatFunc> {
    if !is_integer(kappa) {
        return None;
    }
    let vars = Vars::new(["x", "E"]);
    let e = RatFunc::var(&vars, 1);
    let k: i32 = kappa.to_integer().try_into().ok()?;
    if k.is_zero() {
        return Some(RatFunc::one(&vars));
    }
    e.pow(k).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffmod::{gauge, verify_gauge_equiv};
    use crate::field::{rational::rat, DerivationTable};

    fn qx() -> DiffField {
        DiffField::d_by(&Vars::new(["x"]), "x").unwrap()
    }

    fn module(f: &DiffField, rows: &[&[&str]]) -> DiffModule {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        DiffModule::new(f, f.parse_matrix(&rows).unwrap()).unwrap()
    }

    #[test]
    fn self_gauge_is_scalar() {
        let f = qx();
        let m = module(&f, &[&["x", "1"], &["0", "x^2"]]);
        let c = solve_gauge(&f, &m, &m, 0, &MultiPoly::one(f.vars())).unwrap().unwrap();
        assert!(c[(0, 1)].is_zero() && c[(1, 0)].is_zero());
        assert_eq!(c[(0, 0)], c[(1, 1)]);
    }

    #[test]
    fn finds_a_known_gauge() {
        let f = qx();
        let m = module(&f, &[&["x", "1"], &["1/x", "0"]]);
        let c = f.parse_matrix(&[vec!["1", "x"], vec!["0", "x + 1"]]).unwrap();
        let n = gauge(&f, &m, &c).unwrap();
        let found = solve_gauge(&f, &m, &n, 1, &MultiPoly::one(f.vars())).unwrap().unwrap();
        assert!(verify_gauge_equiv(&f, &m, &n, &found).unwrap());
    }

    #[test]
    fn no_rational_exponential() {
        // ∂c/c = −1 has no rational solution
        let f = qx();
        let (a, b) = (module(&f, &[&["x"]]), module(&f, &[&["x + 1"]]));
        for deg in 0..=5 {
            assert_eq!(solve_gauge(&f, &a, &b, deg, &MultiPoly::one(f.vars())).unwrap(), None);
            let x = MultiPoly::var(f.vars(), 0);
            assert_eq!(solve_gauge(&f, &a, &b, deg, &x).unwrap(), None);
        }
    }

    #[test]
    fn hom_spaces_vanish_for_different_slopes() {
        let f = qx();
        for (n, m, n2, m2) in [(1, 0, 2, 0), (1, 3, -1, 3), (0, 1, 2, -5)] {
            let a = module(&f, &[&[&format!("{n}*x + {m}")]]);
            let b = module(&f, &[&[&format!("{n2}*x + {m2}")]]);
            for deg in 0..=5 {
                assert_eq!(solve_gauge(&f, &a, &b, deg, &MultiPoly::one(f.vars())).unwrap(), None);
            }
        }
    }

    #[test]
    fn rejects_nonconstant_parameters() {
        let v = Vars::new(["x", "E"]);
        let d = DerivationTable::d_by(&v, "x").unwrap().with("E", RatFunc::var(&v, 1)).unwrap();
        let f = DiffField::new(d);
        let a = DiffModule::trivial(&f, 1);
        assert!(solve_gauge(&f, &a, &a, 0, &MultiPoly::one(&v)).is_err());
    }

    #[test]
    fn hyperexp_examples() {
        let v = Vars::new(["x", "E"]);
        assert_eq!(hyperexp_criterion(&rat(1, 1)), Some(RatFunc::var(&v, 1)));
        assert_eq!(hyperexp_criterion(&rat(0, 1)), Some(RatFunc::one(&v)));
        assert_eq!(hyperexp_criterion(&rat(-2, 1)).unwrap().to_string(), "1/(E^2)");
        assert_eq!(hyperexp_criterion(&rat(1, 2)), None);
        // and the returned c solves ∂c = κc
        let d = DerivationTable::d_by(&v, "x").unwrap().with("E", RatFunc::var(&v, 1)).unwrap();
        for k in -3..=3 {
            let c = hyperexp_criterion(&rat(k, 1)).unwrap();
            assert_eq!(d.derive(&c), c.scale(&rat(k, 1)));
        }
    }

    #[test]
    fn half_has_no_polynomial_factor() {
        // r′ = (1/2 − j)·r over polynomials of degree ≤ 10: the operator is
        // triangular with nonzero diagonal, so only r = 0.
        let v = Vars::empty();
        for j in -5..=5i64 {
            let c = rat(1, 2) - rat(j, 1);
            let m = Matrix::from_fn(11, 11, &MultiPoly::zero(&v), |row, col| {
                // coefficient of x^row in r′ − c·r, unknown col = coeff of x^col
                let mut q = Rational::zero();
                if col == row + 1 {
                    q += Rational::from_integer((col as i64).into());
                }
                if col == row {
                    q -= c.clone();
                }
                MultiPoly::constant(&v, q)
            });
            assert!(nullspace(&m).unwrap().is_empty());
        }
    }
}
