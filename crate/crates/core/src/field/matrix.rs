use std::fmt;

use num_traits::{One, Zero};

use super::poly::{MultiPoly, Vars};
use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::FieldError;

/// Commutative ring operations needed by the dense matrix routines.
///
/// `zero_like`/`one_like` build constants in the same ring as `self`
/// (polynomial rings carry their variable list).
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Quotient when `o` divides `self` exactly.
    fn div_exact_ref(&self, o: &Self) -> Option<Self>;
    /// Rough size used for pivot selection; smaller is cheaper.
    fn weight(&self) -> usize {
        1
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact_ref(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self / o)
        }
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.vars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact_ref(&self, o: &Self) -> Option<Self> {
        self.div_exact(o)
    }
    fn weight(&self) -> usize {
        self.num_terms() * (1 + self.total_degree().unwrap_or(0) as usize)
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.vars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact_ref(&self, o: &Self) -> Option<Self> {
        o.inv().ok().map(|i| self * &i)
    }
    fn weight(&self) -> usize {
        self.numer().weight() + self.denom().weight()
    }
}

/// Dense row-major matrix. Carries a zero element so that empty and
/// all-zero shapes still know their ring.
#[derive(Clone)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

pub type RfMatrix = Matrix<RatFunc>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, zero: &T) -> Self {
        Matrix { rows, cols, data: vec![zero.zero_like(); rows * cols], zero: zero.zero_like() }
    }

    pub fn identity(n: usize, zero: &T) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m[(i, i)] = zero.one_like();
        }
        m
    }

    pub fn scalar(n: usize, s: &T) -> Self {
        let mut m = Self::zeros(n, n, s);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, zero: &T) -> Result<Self, FieldError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(FieldError::Shape(format!("ragged rows in {r}-row matrix")));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), zero: zero.zero_like() })
    }

    pub fn from_fn(rows: usize, cols: usize, zero: &T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, zero: zero.zero_like() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Ring>(&self, zero: &U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), zero: zero.zero_like() }
    }

    pub fn try_map<U: Ring, E>(&self, zero: &U, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
            zero: zero.zero_like(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero_elem)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        *e == self.zero.one_like()
                    } else {
                        e.is_zero_elem()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.zero, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(&self.zero, Ring::neg_ref)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(&self.zero, |a| s.mul_ref(a))
    }

    fn same_shape(&self, o: &Self) -> Result<(), FieldError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(FieldError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    /// Product skipping zero entries of the left factor.
    pub fn mul(&self, o: &Self) -> Result<Self, FieldError> {
        if self.cols != o.rows {
            return Err(FieldError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero_elem() {
                        continue;
                    }
                    let t = a.mul_ref(b);
                    let cell = &mut out.data[i * o.cols + j];
                    *cell = if cell.is_zero_elem() { t } else { cell.add_ref(&t) };
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum `self ⊕ o`.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows + o.rows, self.cols + o.cols, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                out[(self.rows + i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        out
    }

    pub fn kronecker(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, &self.zero, |i, j| {
            self[(i / o.rows, j / o.cols)].mul_ref(&o[(i % o.rows, j % o.cols)])
        })
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, &self.zero, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<T, FieldError> {
        if !self.is_square() {
            return Err(FieldError::Shape("determinant of non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(self.zero.one_like());
        }
        let ech = super::linalg::bareiss(self, self.cols)?;
        if ech.rank < self.rows {
            return Ok(self.zero.clone());
        }
        let d = ech.matrix[(self.rows - 1, self.cols - 1)].clone();
        Ok(if ech.sign_negative { d.neg_ref() } else { d })
    }
}

impl Matrix<RatFunc> {
    pub fn vars(&self) -> &Vars {
        self.zero.vars()
    }

    pub fn rf_identity(n: usize, vars: &Vars) -> Self {
        Self::identity(n, &RatFunc::zero(vars))
    }

    /// Entrywise cross-multiplied equality.
    pub fn equals(&self, o: &Self) -> Result<bool, FieldError> {
        self.same_shape(o)?;
        for (a, b) in self.data.iter().zip(&o.data) {
            if !a.equals(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> PartialEq for Matrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}
