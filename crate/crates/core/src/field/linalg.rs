//! Fraction-free (Bareiss) elimination and the exact solvers built on it.

use super::matrix::{Matrix, Ring, RfMatrix};
use super::poly::{MultiPoly, Vars};
use super::ratfunc::RatFunc;
use super::FieldError;

/// Result of fraction-free Gauss–Jordan elimination.
///
/// Every pivot row `i` has its pivot in column `pivots[i]`; all pivot entries
/// equal the last pivot (a minor of the input), and pivot columns are zero
/// outside their pivot row.
#[derive(Clone)]
pub struct Echelon<T> {
    pub matrix: Matrix<T>,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub sign_negative: bool,
}

/// Fraction-free Gauss–Jordan elimination over an integral domain, pivoting
/// only within the first `pivot_cols` columns. Every division by the previous
/// pivot is exact.
pub fn bareiss<T: Ring>(m: &Matrix<T>, pivot_cols: usize) -> Result<Echelon<T>, FieldError> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let one = a.zero_elem().one_like();
    let mut prev = one;
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut sign_negative = false;
    for c in 0..pivot_cols.min(cols) {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[(i, c)].is_zero_elem())
            .min_by_key(|&i| a[(i, c)].weight())
        else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
            sign_negative = !sign_negative;
        }
        let piv = a[(r, c)].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let t = if f.is_zero_elem() {
                    piv.mul_ref(&a[(i, j)])
                } else {
                    piv.mul_ref(&a[(i, j)]).sub_ref(&f.mul_ref(&a[(r, j)]))
                };
                a[(i, j)] = t.div_exact_ref(&prev).ok_or(FieldError::InexactDivision)?;
            }
            a[(i, c)] = piv.zero_like();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Ok(Echelon { matrix: a, rank: r, pivots, sign_negative })
}

/// Solution set of `A·v = b`: one particular solution plus a nullspace basis.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<RatFunc>,
    pub nullspace: Vec<Vec<RatFunc>>,
}

/// A common multiple of the given denominators (not necessarily the least).
pub(crate) fn common_denominator<'a, I: IntoIterator<Item = &'a MultiPoly>>(vars: &Vars, dens: I) -> MultiPoly {
    let mut ds: Vec<&MultiPoly> = dens.into_iter().filter(|d| !d.is_one()).collect();
    ds.sort_by_key(|d| std::cmp::Reverse(d.total_degree().unwrap_or(0)));
    let mut l = MultiPoly::one(vars);
    for d in ds {
        if l.div_exact(d).is_none() {
            l = &l * d;
        }
    }
    l
}

/// Clears denominators row by row, producing a polynomial matrix whose rows
/// are nonzero multiples of the input rows.
pub(crate) fn clear_rows(m: &RfMatrix) -> Result<Matrix<MultiPoly>, FieldError> {
    let vars = m.vars().clone();
    let zero = MultiPoly::zero(&vars);
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = m.row(i);
        let l = common_denominator(&vars, row.iter().map(RatFunc::denom));
        let mut out = Vec::with_capacity(row.len());
        for f in row {
            let k = l.div_exact(f.denom()).ok_or(FieldError::InexactDivision)?;
            out.push(f.numer() * &k);
        }
        rows.push(out);
    }
    if m.rows() == 0 {
        return Ok(Matrix::zeros(0, m.cols(), &zero));
    }
    Matrix::from_rows(rows, &zero)
}

/// Reads the particular solution and nullspace basis off a reduced
/// augmented system `[A | b]` with `n` unknowns, or `None` if inconsistent.
pub(crate) fn read_solution(ech: &Echelon<MultiPoly>, n: usize, augmented: bool) -> Option<LinearSolution> {
    let a = &ech.matrix;
    let vars = a.zero_elem().vars().clone();
    if augmented {
        for i in ech.rank..a.rows() {
            if !a[(i, n)].is_zero() {
                return None;
            }
        }
    }
    let rf = |p: &MultiPoly| RatFunc::from_poly(p.clone());
    let mut particular = vec![RatFunc::zero(&vars); n];
    for (i, &c) in ech.pivots.iter().enumerate() {
        if augmented {
            particular[c] = RatFunc::new(a[(i, n)].clone(), a[(i, c)].clone()).expect("nonzero pivot");
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let mut nullspace = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![RatFunc::zero(&vars); n];
        v[f] = RatFunc::one(&vars);
        for (i, &c) in ech.pivots.iter().enumerate() {
            if !a[(i, f)].is_zero() {
                v[c] = -rf(&a[(i, f)]) * RatFunc::new(MultiPoly::one(&vars), a[(i, c)].clone()).expect("nonzero pivot");
            }
        }
        nullspace.push(v);
    }
    Some(LinearSolution { particular, nullspace })
}

/// Exact solution of `A·v = b` over ℚ(vars) via fraction-free elimination on
/// the denominator-cleared system.
pub fn linear_solve(a: &RfMatrix, b: &[RatFunc]) -> Result<Option<LinearSolution>, FieldError> {
    if b.len() != a.rows() {
        return Err(FieldError::Shape(format!("{} rows but {} right-hand sides", a.rows(), b.len())));
    }
    let vars = a.vars().clone();
    let n = a.cols();
    let aug = Matrix::from_fn(a.rows(), n + 1, &RatFunc::zero(&vars), |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let poly = clear_rows(&aug)?;
    let ech = bareiss(&poly, n)?;
    Ok(read_solution(&ech, n, true))
}

/// Nullspace basis of a polynomial matrix, as vectors over the fraction field.
pub fn nullspace(m: &Matrix<MultiPoly>) -> Result<Vec<Vec<RatFunc>>, FieldError> {
    let ech = bareiss(m, m.cols())?;
    Ok(read_solution(&ech, m.cols(), false).map(|s| s.nullspace).unwrap_or_default())
}

/// Inverse over ℚ(vars).
pub fn mat_inverse(m: &RfMatrix) -> Result<RfMatrix, FieldError> {
    if !m.is_square() {
        return Err(FieldError::Shape("inverse of non-square matrix".into()));
    }
    let n = m.rows();
    let vars = m.vars().clone();
    let zero = RatFunc::zero(&vars);
    if n == 0 {
        return Ok(m.clone());
    }
    if n == 1 {
        return Ok(Matrix::scalar(1, &m[(0, 0)].inv().map_err(|_| FieldError::Singular)?));
    }
    if n == 2 {
        let det = &(&m[(0, 0)] * &m[(1, 1)]) - &(&m[(0, 1)] * &m[(1, 0)]);
        let inv = det.inv().map_err(|_| FieldError::Singular)?;
        return Ok(Matrix::from_fn(2, 2, &zero, |i, j| match (i, j) {
            (0, 0) => &m[(1, 1)] * &inv,
            (1, 1) => &m[(0, 0)] * &inv,
            (0, 1) => -(&m[(0, 1)] * &inv),
            _ => -(&m[(1, 0)] * &inv),
        }));
    }
    let aug = Matrix::from_fn(n, 2 * n, &zero, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            RatFunc::one(&vars)
        } else {
            zero.clone()
        }
    });
    let poly = clear_rows(&aug)?;
    let ech = bareiss(&poly, n)?;
    if ech.rank < n {
        return Err(FieldError::Singular);
    }
    let a = &ech.matrix;
    let mut out = Matrix::zeros(n, n, &zero);
    for (i, &c) in ech.pivots.iter().enumerate() {
        for j in 0..n {
            out[(c, j)] = RatFunc::new(a[(i, n + j)].clone(), a[(i, c)].clone())?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_ratfunc;
    use crate::field::rational::int;

    fn rf(vars: &Vars, s: &str) -> RatFunc {
        parse_ratfunc(s, vars).unwrap()
    }

    fn mat(vars: &Vars, rows: &[&[&str]]) -> RfMatrix {
        let z = RatFunc::zero(vars);
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| rf(vars, s)).collect()).collect(), &z).unwrap()
    }

    #[test]
    fn rational_determinant_and_rank() {
        let m = Matrix::from_rows(
            vec![vec![int(2), int(1), int(3)], vec![int(0), int(1), int(4)], vec![int(1), int(0), int(5)]],
            &int(0),
        )
        .unwrap();
        // 2(5-0) - 1(0-4) + 3(0-1) = 11
        assert_eq!(m.det().unwrap(), int(11));
        let singular = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]], &int(0)).unwrap();
        assert_eq!(singular.det().unwrap(), int(0));
        assert_eq!(bareiss(&singular, 2).unwrap().rank, 1);
    }

    #[test]
    fn inverse_of_diag_and_identity() {
        let v = Vars::new(["x"]);
        let d = mat(&v, &[&["x", "0"], &["0", "1/x"]]);
        let inv = mat_inverse(&d).unwrap();
        assert!(inv.equals(&mat(&v, &[&["1/x", "0"], &["0", "x"]])).unwrap());
        let id = RfMatrix::rf_identity(3, &v);
        assert!(mat_inverse(&id).unwrap().is_identity());
        let sing = mat(&v, &[&["x", "x^2"], &["1", "x"]]);
        assert!(matches!(mat_inverse(&sing), Err(FieldError::Singular)));
    }

    #[test]
    fn three_by_three_inverse_multiplies_back() {
        let v = Vars::new(["a"]);
        let m = mat(&v, &[&["a", "1", "0"], &["1/a", "a+1", "2"], &["0", "a^2", "1"]]);
        let inv = mat_inverse(&m).unwrap();
        assert!(m.mul(&inv).unwrap().equals(&RfMatrix::rf_identity(3, &v)).unwrap());
        assert!(inv.mul(&m).unwrap().equals(&RfMatrix::rf_identity(3, &v)).unwrap());
    }

    #[test]
    fn solve_trivial_and_inconsistent() {
        let v = Vars::new(["a"]);
        let id = RfMatrix::rf_identity(2, &v);
        let b = vec![rf(&v, "a"), rf(&v, "1/(a+1)")];
        let s = linear_solve(&id, &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.nullspace.is_empty());
        let zero = Matrix::zeros(2, 2, &RatFunc::zero(&v));
        assert!(linear_solve(&zero, &b).unwrap().is_none());
    }

    #[test]
    fn underdetermined_system_has_nullspace() {
        let v = Vars::new(["a"]);
        let m = mat(&v, &[&["1", "a", "0"], &["0", "0", "1"]]);
        let b = vec![rf(&v, "a"), rf(&v, "2")];
        let s = linear_solve(&m, &b).unwrap().unwrap();
        assert_eq!(s.nullspace.len(), 1);
        let check = |x: &[RatFunc], rhs: &[RatFunc]| {
            for i in 0..m.rows() {
                let mut acc = RatFunc::zero(&v);
                for j in 0..m.cols() {
                    acc = &acc + &(&m[(i, j)] * &x[j]);
                }
                assert_eq!(acc, rhs[i]);
            }
        };
        check(&s.particular, &b);
        check(&s.nullspace[0], &[RatFunc::zero(&v), RatFunc::zero(&v)]);
    }
}
