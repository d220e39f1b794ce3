//! The hypergeometric contiguity example and the shift/scale pair that
//! commutes only up to gauge.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::field::{parse_ratfunc, rational::format_rational, DerivationTable, RatFunc, Rational, RfMatrix, SubstEndo, Vars};

use super::{gauge, hyperexp_criterion, twist, verify_gauge_equiv, DiffField, DiffModError, DiffModule};

/// ℚ(a, b, c, z) with `∂ = d/dz` and `σ1: a ↦ a+1`, `σ2: b ↦ b+1`,
/// `σ3: c ↦ c+1`.
pub fn hyper_field() -> DiffField {
    let v = Vars::new(["a", "b", "c", "z"]);
    let mut f = DiffField::d_by(&v, "z").expect("z is a variable");
    for (name, var) in [("sigma1", "a"), ("sigma2", "b"), ("sigma3", "c")] {
        let img = parse_ratfunc(&format!("{var} + 1"), &v).expect("literal");
        let s = SubstEndo::with_images(&v, [(var, img)]).expect("literal");
        f.register(name, s).expect("shifts commute with d/dz");
    }
    f
}

/// Companion matrix of `z(1−z)y″ + (c − (a+b+1)z)y′ − ab·y = 0`.
pub fn hyper_companion(field: &DiffField) -> DiffModule {
    let m = field
        .parse_matrix(&[vec!["0", "1"], vec!["a*b/(z*(1-z))", "((a+b+1)*z - c)/(z*(1-z))"]])
        .expect("literal");
    DiffModule::new(field, m).expect("square")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeVersion {
    /// The matrices as printed.
    Printed,
    /// `C1`, `C2` with the sign of the (1,2) entry flipped; `C3` unchanged.
    Corrected,
}

pub fn hyper_gauge(field: &DiffField, i: usize, version: GaugeVersion) -> Result<RfMatrix, DiffModError> {
    let printed = version == GaugeVersion::Printed;
    let rows: [[&str; 2]; 2] = match (i, printed) {
        (1, true) => [["(c - z*b - a - 1)/a", "z*(z-1)/a"], ["b", "z - 1"]],
        (1, false) => [["(c - z*b - a - 1)/a", "z*(1-z)/a"], ["b", "z - 1"]],
        (2, true) => [["(c - z*a - b - 1)/b", "z*(z-1)/b"], ["a", "z - 1"]],
        (2, false) => [["(c - z*a - b - 1)/b", "z*(1-z)/b"], ["a", "z - 1"]],
        (3, _) => [["c", "z"], ["a*b/(1-z)", "z*(a+b-c)/(1-z)"]],
        _ => return Err(DiffModError::Invalid(format!("no contiguity matrix C{i}"))),
    };
    field.parse_matrix(&rows.map(|r| r.to_vec()))
}

/// Both candidate orientations of `M ≅ T(σᵢ)(M)` via `Cᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContiguityCheck {
    pub generator: usize,
    pub version: GaugeVersion,
    /// `gauge(A, Cᵢ) = σᵢ(A)`.
    pub forward: bool,
    /// `gauge(σᵢ(A), Cᵢ) = A`.
    pub reverse: bool,
}

pub fn check_contiguity(field: &DiffField, i: usize, version: GaugeVersion) -> Result<ContiguityCheck, DiffModError> {
    let a = hyper_companion(field);
    let sa = twist(field, &a, &format!("sigma{i}"))?;
    let c = hyper_gauge(field, i, version)?;
    let forward = gauge(field, &a, &c)?.matrix().equals(sa.matrix())?;
    let reverse = gauge(field, &sa, &c)?.matrix().equals(a.matrix())?;
    Ok(ContiguityCheck { generator: i, version, forward, reverse })
}

/// ℚ(x, m, E) with `∂x = 1`, `∂E = E` (E stands for `exp(x)`), and
/// `sigma1: x ↦ x + s₁`, `sigma2: x ↦ s₂·x`, both undefined on E.
pub fn shift_scale_field(s1: &Rational, s2: i64) -> Result<DiffField, DiffModError> {
    let v = Vars::new(["x", "m", "E"]);
    let d = DerivationTable::d_by(&v, "x")?.with("E", RatFunc::var(&v, 2))?;
    let mut f = DiffField::new(d);
    let x = RatFunc::var(&v, 0);
    let shift = SubstEndo::with_images(&v, [("x", &x + &RatFunc::constant(&v, s1.clone()))])?.set("E", None)?;
    let scale = SubstEndo::with_images(&v, [("x", x.scale(&Rational::from_integer(s2.into())))])?.set("E", None)?;
    f.register("sigma1", shift)?;
    f.register("sigma2", scale)?;
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommuteRow {
    pub n: i64,
    /// σ₂ first, then σ₁.
    pub shift_after_scale: String,
    /// σ₁ first, then σ₂.
    pub scale_after_shift: String,
    pub kappa: String,
    pub equivalent: bool,
    pub gauge: Option<String>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommuteReport {
    pub s1: String,
    pub s2: i64,
    /// `s₁(s₂ − 1)s₂`.
    pub product: String,
    /// Whether the product is an integer, i.e. equivalence for every n.
    pub uniform: bool,
    pub rows: Vec<CommuteRow>,
}

/// For each n, twists `∂y = (nx + m)y` by the two orders of σ₁, σ₂ and
/// decides gauge equivalence of the results through the exponential ansatz.
pub fn commute_up_to_gauge(s1: &Rational, s2: i64, ns: &[i64]) -> Result<CommuteReport, DiffModError> {
    if s2 == 0 || s2 == 1 {
        return Err(DiffModError::Invalid(format!("s2 = {s2} must not be 0 or 1")));
    }
    let field = shift_scale_field(s1, s2)?;
    let v = field.vars().clone();
    let s2q = Rational::from_integer(s2.into());
    let product = s1 * (&s2q - Rational::one()) * &s2q;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let a = DiffModule::new(&field, field.parse_matrix(&[vec![format!("{n}*x + m")]])?)?;
        let t21 = twist(&field, &twist(&field, &a, "sigma2")?, "sigma1")?;
        let t12 = twist(&field, &twist(&field, &a, "sigma1")?, "sigma2")?;
        let diff = &t21.matrix()[(0, 0)] - &t12.matrix()[(0, 0)];
        let kappa = diff
            .as_constant()
            .ok_or_else(|| DiffModError::Invalid(format!("difference {diff} is not constant")))?;
        let c = hyperexp_criterion(&kappa);
        let (gauge_str, verified) = match &c {
            Some(c) => {
                let c = c.embed(&v)?;
                let cm = RfMatrix::scalar(1, &c);
                (Some(c.to_string()), verify_gauge_equiv(&field, &t21, &t12, &cm)?)
            }
            None => (None, false),
        };
        rows.push(CommuteRow {
            n,
            shift_after_scale: t21.matrix()[(0, 0)].to_string(),
            scale_after_shift: t12.matrix()[(0, 0)].to_string(),
            kappa: format_rational(&kappa),
            equivalent: c.is_some(),
            gauge: gauge_str,
            verified,
        });
    }
    let uniform = product.is_integer() || product.is_zero();
    Ok(CommuteReport { s1: format_rational(s1), s2, product: format_rational(&product), uniform, rows })
}
