use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{forward_owned, MultiPoly, Vars};
use super::rational::Rational;
use super::FieldError;

/// Quotient of two polynomials, stored unreduced.
///
/// After every operation the denominator is made primitive with positive
/// leading coefficient, common monomial factors are cancelled, and an exact
/// division is attempted when one side divides the other. Equality is decided
/// by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, FieldError> {
        if num.vars() != den.vars() {
            return Err(FieldError::VariableMismatch);
        }
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(RatFunc { num, den }.normalized())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RatFunc { num: p, den }.normalized()
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(vars, i))
    }

    /// Looks up a variable by name.
    pub fn named(vars: &Vars, name: &str) -> Result<Self, FieldError> {
        let i = vars.index_of(name).ok_or_else(|| FieldError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.num.vars());
            return self;
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !g.is_one() {
            self.num = self.num.div_monomial(&g);
            self.den = self.den.div_monomial(&g);
        }
        let c = self.den.content();
        if !c.is_one() {
            let inv = Rational::one() / c;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if self.den.is_one() {
            return self;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = MultiPoly::one(self.num.vars());
        } else if !self.num.is_constant() {
            if let Some(q) = self.den.div_exact(&self.num) {
                let c = q.content();
                self.num = MultiPoly::constant(self.num.vars(), Rational::one() / &c);
                self.den = q.scale(&(Rational::one() / c));
            }
        }
        self
    }

    pub fn inv(&self) -> Result<RatFunc, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatFunc { num: self.den.clone(), den: self.num.clone() }.normalized())
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) }.normalized())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }.normalized()
    }

    /// `p/q = r/s ⇔ p·s = r·q`.
    pub fn equals(&self, other: &RatFunc) -> Result<bool, FieldError> {
        if self.vars() != other.vars() {
            return Err(FieldError::VariableMismatch);
        }
        if self.den == other.den {
            return Ok(self.num == other.num);
        }
        Ok(&self.num * &other.den == &other.num * &self.den)
    }

    pub fn embed(&self, target: &Vars) -> Result<RatFunc, FieldError> {
        Ok(RatFunc { num: self.num.embed(target)?, den: self.den.embed(target)? }.normalized())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, FieldError> {
        Ok(self * &other.inv()?)
    }

    /// Evaluates at a rational point, failing where the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, FieldError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(self.num.eval(point) / d)
    }
}

/// `f == g` via cross-multiplication; values over different variable lists
/// compare unequal.
impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

/// Cross-multiplied equality test; errors when the variable lists differ.
pub fn rf_equals(f: &RatFunc, g: &RatFunc) -> Result<bool, FieldError> {
    f.equals(g)
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFunc { num: &self.num + &rhs.num, den: self.den.clone() }.normalized();
        }
        RatFunc {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.vars());
        }
        if self.den == rhs.num {
            return RatFunc { num: self.num.clone(), den: rhs.den.clone() }.normalized();
        }
        if self.num == rhs.den {
            return RatFunc { num: rhs.num.clone(), den: self.den.clone() }.normalized();
        }
        RatFunc { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.normalized()
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] otherwise.
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

forward_owned!(Add, add, RatFunc);
forward_owned!(Sub, sub, RatFunc);
forward_owned!(Mul, mul, RatFunc);
forward_owned!(Div, div, RatFunc);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MultiPoly, strict: bool| {
            let s = p.to_string();
            let atomic = if strict { s.chars().all(char::is_alphanumeric) } else { p.num_terms() == 1 };
            if atomic {
                s
            } else {
                format!("({s})")
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num, false), wrap(&self.den, true))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Derivation on ℚ(vars) given by its values on the variables.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationTable {
    vars: Vars,
    images: Vec<RatFunc>,
}

impl DerivationTable {
    pub fn new(vars: &Vars, images: Vec<RatFunc>) -> Result<Self, FieldError> {
        if images.len() != vars.len() || images.iter().any(|f| f.vars() != vars) {
            return Err(FieldError::VariableMismatch);
        }
        Ok(DerivationTable { vars: vars.clone(), images })
    }

    /// `∂ = d/d(var)`: the named variable maps to 1, all others to 0.
    pub fn d_by(vars: &Vars, var: &str) -> Result<Self, FieldError> {
        let i = vars.index_of(var).ok_or_else(|| FieldError::UnknownVariable(var.to_string()))?;
        let images = (0..vars.len())
            .map(|j| if j == i { RatFunc::one(vars) } else { RatFunc::zero(vars) })
            .collect();
        Ok(DerivationTable { vars: vars.clone(), images })
    }

    pub fn with(mut self, var: &str, image: RatFunc) -> Result<Self, FieldError> {
        let i = self.vars.index_of(var).ok_or_else(|| FieldError::UnknownVariable(var.to_string()))?;
        if image.vars() != &self.vars {
            return Err(FieldError::VariableMismatch);
        }
        self.images[i] = image;
        Ok(self)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn image(&self, var: usize) -> &RatFunc {
        &self.images[var]
    }

    pub fn derive_poly(&self, p: &MultiPoly) -> RatFunc {
        let mut acc = RatFunc::zero(&self.vars);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() || p.degree_in(i).unwrap_or(0) == 0 {
                continue;
            }
            acc = &acc + &(&RatFunc::from_poly(p.partial(i)) * img);
        }
        acc
    }

    /// Quotient rule: `∂(p/q) = (∂p·q − p·∂q)/q²`.
    pub fn derive(&self, f: &RatFunc) -> RatFunc {
        let dp = self.derive_poly(f.numer());
        if f.denom().is_one() {
            return dp;
        }
        let dq = self.derive_poly(f.denom());
        let q = RatFunc::from_poly(f.denom().clone());
        let p = RatFunc::from_poly(f.numer().clone());
        &(&(&dp * &q) - &(&p * &dq)) / &(&q * &q)
    }
}

pub fn rf_derive(f: &RatFunc, table: &DerivationTable) -> RatFunc {
    table.derive(f)
}

/// Substitution endomorphism `v ↦ σ(v)` of ℚ(vars). Variables without an
/// image are outside the domain of σ.
#[derive(Clone, Debug, PartialEq)]
pub struct SubstEndo {
    vars: Vars,
    images: Vec<Option<RatFunc>>,
}

impl SubstEndo {
    pub fn identity(vars: &Vars) -> Self {
        SubstEndo { vars: vars.clone(), images: (0..vars.len()).map(|i| Some(RatFunc::var(vars, i))).collect() }
    }

    /// The identity on every variable except the listed overrides.
    pub fn with_images<'a, I>(vars: &Vars, images: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = (&'a str, RatFunc)>,
    {
        let mut s = Self::identity(vars);
        for (name, img) in images {
            s = s.set(name, Some(img))?;
        }
        Ok(s)
    }

    pub fn set(mut self, var: &str, image: Option<RatFunc>) -> Result<Self, FieldError> {
        let i = self.vars.index_of(var).ok_or_else(|| FieldError::UnknownVariable(var.to_string()))?;
        if let Some(img) = &image {
            if img.vars() != &self.vars {
                return Err(FieldError::VariableMismatch);
            }
        }
        self.images[i] = image;
        Ok(self)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn image(&self, var: usize) -> Option<&RatFunc> {
        self.images[var].as_ref()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, img)| img.as_ref().is_some_and(|f| f == &RatFunc::var(&self.vars, i)))
    }

    /// Image of a polynomial as a single fraction: with `σ(v) = n_v/d_v` and
    /// `E_v = deg_v p`, the denominator is `Π d_v^{E_v}`.
    pub fn apply_poly(&self, p: &MultiPoly) -> Result<RatFunc, FieldError> {
        let vars = &self.vars;
        let n = vars.len();
        let mut max_e = vec![0u32; n];
        for (m, _) in p.terms() {
            for (i, &e) in m.exps().iter().enumerate() {
                max_e[i] = max_e[i].max(e);
            }
        }
        let mut nums: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
        let mut dens: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
        for i in 0..n {
            if max_e[i] == 0 {
                nums.push(Vec::new());
                dens.push(Vec::new());
                continue;
            }
            let img = self.images[i]
                .as_ref()
                .ok_or_else(|| FieldError::OutsideDomain(vars.name(i).to_string()))?;
            let powers = |base: &MultiPoly| {
                let mut v = vec![MultiPoly::one(vars)];
                for k in 1..=max_e[i] as usize {
                    let next = &v[k - 1] * base;
                    v.push(next);
                }
                v
            };
            nums.push(powers(img.numer()));
            dens.push(if img.denom().is_one() { Vec::new() } else { powers(img.denom()) });
        }
        let mut num = MultiPoly::zero(vars);
        for (m, c) in p.terms() {
            let mut t = MultiPoly::constant(vars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if max_e[i] == 0 {
                    continue;
                }
                if e > 0 {
                    t = &t * &nums[i][e as usize];
                }
                if !dens[i].is_empty() && e < max_e[i] {
                    t = &t * &dens[i][(max_e[i] - e) as usize];
                }
            }
            num = &num + &t;
        }
        let mut den = MultiPoly::one(vars);
        for i in 0..n {
            if !dens[i].is_empty() {
                den = &den * &dens[i][max_e[i] as usize];
            }
        }
        RatFunc::new(num, den)
    }

    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc, FieldError> {
        if f.vars() != &self.vars {
            return Err(FieldError::VariableMismatch);
        }
        let n = self.apply_poly(f.numer())?;
        if f.denom().is_one() {
            return Ok(n);
        }
        let d = self.apply_poly(f.denom())?;
        if d.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(&n * &d.inv()?)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &SubstEndo) -> Result<SubstEndo, FieldError> {
        if self.vars != inner.vars {
            return Err(FieldError::VariableMismatch);
        }
        let images = inner
            .images
            .iter()
            .map(|img| match img {
                Some(f) => match self.apply(f) {
                    Ok(g) => Ok(Some(g)),
                    Err(FieldError::OutsideDomain(_)) => Ok(None),
                    Err(e) => Err(e),
                },
                None => Ok(None),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SubstEndo { vars: self.vars.clone(), images })
    }
}

pub fn rf_substitute(f: &RatFunc, sigma: &SubstEndo) -> Result<RatFunc, FieldError> {
    sigma.apply(f)
}

/// The λ with `∂(σ(v)) = λ·σ(∂(v))` for every variable in the domain of σ.
///
/// Variables whose constraint reads `0 = λ·0` do not determine λ; if no
/// variable does, λ = 1.
pub fn commutation_factor(sigma: &SubstEndo, d: &DerivationTable) -> Result<RatFunc, FieldError> {
    if sigma.vars() != d.vars() {
        return Err(FieldError::VariableMismatch);
    }
    let vars = sigma.vars();
    let mut lambda: Option<RatFunc> = None;
    let mut homogeneous: Vec<(usize, RatFunc)> = Vec::new();
    for i in 0..vars.len() {
        let Some(img) = sigma.image(i) else { continue };
        let lhs = d.derive(img);
        let rhs = match sigma.apply(d.image(i)) {
            Ok(r) => r,
            Err(FieldError::OutsideDomain(_)) => continue,
            Err(e) => return Err(e),
        };
        if rhs.is_zero() {
            homogeneous.push((i, lhs));
            continue;
        }
        let cand = &lhs / &rhs;
        match &lambda {
            None => lambda = Some(cand),
            Some(l) if l == &cand => {}
            Some(_) => return Err(FieldError::NoCommutationFactor(vars.name(i).to_string())),
        }
    }
    if let Some((i, _)) = homogeneous.iter().find(|(_, lhs)| !lhs.is_zero()) {
        return Err(FieldError::NoCommutationFactor(vars.name(*i).to_string()));
    }
    Ok(lambda.unwrap_or_else(|| RatFunc::one(vars)))
}
