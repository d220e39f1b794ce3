use clap::Subcommand;
use serde_json::{json, Value};
use tannakit::diffmod::{
    commute_up_to_gauge, gauge, module_from_json, module_to_json, solve_gauge, twist, DiffField, DiffModule, ModuleJson,
};
use tannakit::field::{matrix_to_strings, parse_ratfunc, rational::parse_rational, RfMatrix};

use super::Outcome;
use crate::input::{self, err, InputError, Result};
use crate::report::Check;

pub const HYPERGEOMETRIC: &str = include_str!("../../fixtures/paper/hypergeometric.json");
pub const COMMUTE_CHECK: &str = include_str!("../../fixtures/paper/commute_check.json");

#[derive(Debug, Subcommand)]
pub enum DiffmodCmd {
    /// `T(σ)(M)`: matrix `λ·σ(A)`.
    Twist {
        #[arg(long)]
        module: String,
        /// Name of an endomorphism registered in the module's field.
        #[arg(long)]
        endo: String,
        /// Write the resulting module here.
        #[arg(long)]
        json_out: Option<String>,
    },
    /// Gauge transform `C⁻¹AC − C⁻¹∂C`.
    Gauge {
        #[arg(long)]
        module: String,
        /// Rows of rational-function strings.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        json_out: Option<String>,
    },
    /// Whether `C` takes the module to the target: `∂C = AC − CB`.
    Verify {
        #[arg(long)]
        module: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        matrix: String,
    },
    /// Search for a gauge matrix with entries `p/denom`, `deg p ≤ deg + deg denom`.
    Solve {
        #[arg(long)]
        module: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1)]
        deg: u32,
        /// Common denominator of the entries, a polynomial.
        #[arg(long, default_value = "1")]
        denom: String,
        /// Write the gauge matrix here.
        #[arg(long)]
        json_out: Option<String>,
    },
    /// The three hypergeometric contiguity gauges.
    Contiguity {
        /// Check the matrices exactly as printed instead of the corrected ones.
        #[arg(long)]
        printed: bool,
    },
    /// Whether the shift `x ↦ x+s1` and the scaling `x ↦ s2·x` commute up to
    /// gauge on `∂y = (nx + m)y`.
    CommuteCheck {
        #[arg(long, default_value = "1/2")]
        s1: String,
        #[arg(long, default_value_t = 2)]
        s2: i64,
        /// Values of n, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        n: Vec<i64>,
    },
}

fn load(arg: &str) -> Result<(DiffField, DiffModule)> {
    let j: ModuleJson = input::json(arg, "module")?;
    module_from_json(&j).map_err(err)
}

/// The target's matrix read over the source module's field.
fn load_target(field: &DiffField, arg: &str) -> Result<DiffModule> {
    let j: ModuleJson = input::json(arg, "target")?;
    let m = field.parse_matrix(&j.matrix).map_err(err)?;
    DiffModule::new(field, m).map_err(err)
}

fn load_matrix(field: &DiffField, arg: &str) -> Result<RfMatrix> {
    let rows: Vec<Vec<String>> = input::json(arg, "matrix")?;
    field.parse_matrix(&rows).map_err(err)
}

fn rows(m: &RfMatrix) -> Value {
    json!(matrix_to_strings(m))
}

/// `∂C − (AC − CB)`.
fn residual(field: &DiffField, m: &DiffModule, n: &DiffModule, c: &RfMatrix) -> Result<RfMatrix> {
    let rhs = m.matrix().mul(c).and_then(|ac| ac.sub(&c.mul(n.matrix())?)).map_err(err)?;
    field.derive_matrix(c).sub(&rhs).map_err(err)
}

pub fn run(cmd: &DiffmodCmd) -> Result<Outcome> {
    let checks = match cmd {
        DiffmodCmd::Twist { module, endo, json_out } => {
            let (f, m) = load(module)?;
            let t = twist(&f, &m, endo).map_err(err)?;
            if let Some(p) = json_out {
                input::write(p, &module_to_json(&f, &t))?;
            }
            vec![Check::pass("twist", json!({ "endo": endo, "matrix": rows(t.matrix()) }))]
        }
        DiffmodCmd::Gauge { module, matrix, json_out } => {
            let (f, m) = load(module)?;
            let c = load_matrix(&f, matrix)?;
            let g = gauge(&f, &m, &c).map_err(err)?;
            if let Some(p) = json_out {
                input::write(p, &module_to_json(&f, &g))?;
            }
            vec![Check::pass("gauge", json!({ "matrix": rows(g.matrix()) }))]
        }
        DiffmodCmd::Verify { module, target, matrix } => {
            let (f, m) = load(module)?;
            let n = load_target(&f, target)?;
            let c = load_matrix(&f, matrix)?;
            vec![verify_check("verify", &f, &m, &n, &c)?]
        }
        DiffmodCmd::Solve { module, target, deg, denom, json_out } => {
            let (f, m) = load(module)?;
            let n = load_target(&f, target)?;
            let d = parse_ratfunc(denom, f.vars()).map_err(err)?;
            if !d.is_polynomial() {
                return Err(InputError(format!("denominator {denom:?} is not a polynomial")));
            }
            let detail = json!({ "deg": deg, "denom": d.to_string() });
            match solve_gauge(&f, &m, &n, *deg, d.numer()).map_err(err)? {
                Some(c) => {
                    if let Some(p) = json_out {
                        input::write(p, &matrix_to_strings(&c))?;
                    }
                    let mut check = verify_check("solve", &f, &m, &n, &c)?;
                    check.detail = json!({ "deg": deg, "denom": d.to_string(), "gauge": rows(&c) });
                    vec![check]
                }
                None => vec![Check::none_found("solve", detail)],
            }
        }
        DiffmodCmd::Contiguity { printed } => contiguity(*printed)?,
        DiffmodCmd::CommuteCheck { s1, s2, n } => vec![commute_check(s1, *s2, n)?],
    };
    Ok(Outcome::checks(checks))
}

fn verify_check(name: &str, f: &DiffField, m: &DiffModule, n: &DiffModule, c: &RfMatrix) -> Result<Check> {
    if (c.rows(), c.cols()) != (m.dim(), m.dim()) || n.dim() != m.dim() {
        return Err(InputError(format!("dimensions {} / {} / {}x{}", m.dim(), n.dim(), c.rows(), c.cols())));
    }
    let det = c.det().map_err(err)?;
    if det.is_zero() {
        return Ok(Check::fail(name, json!({ "invertible": false }), vec![json!({ "det": "0" })]));
    }
    let r = residual(f, m, n, c)?;
    let ok = r.is_zero();
    let witnesses = if ok { Vec::new() } else { vec![json!({ "residual": rows(&r) })] };
    Ok(Check::from_bool(name, ok, json!({ "invertible": true }), witnesses))
}

#[derive(serde::Deserialize)]
struct HyperFixture {
    module: ModuleJson,
    printed: std::collections::BTreeMap<String, Vec<Vec<String>>>,
    corrected: std::collections::BTreeMap<String, Vec<Vec<String>>>,
}

/// `gauge(A, Cᵢ) = σᵢ(A)` for i = 1, 2, 3; the reverse orientation is
/// reported alongside.
pub fn contiguity(printed: bool) -> Result<Vec<Check>> {
    let fx: HyperFixture = serde_json::from_str(HYPERGEOMETRIC).map_err(err)?;
    let (f, a) = module_from_json(&fx.module).map_err(err)?;
    let table = if printed { &fx.printed } else { &fx.corrected };
    let mut out = Vec::new();
    for (name, c_rows) in table {
        let c = f.parse_matrix(c_rows).map_err(err)?;
        let sa = twist(&f, &a, name).map_err(err)?;
        let forward = gauge(&f, &a, &c).map_err(err)?;
        let reverse = gauge(&f, &sa, &c).map_err(err)?.matrix().equals(a.matrix()).map_err(err)?;
        let diff = forward.matrix().sub(sa.matrix()).map_err(err)?;
        let ok = diff.is_zero();
        let detail = json!({
            "version": if printed { "printed" } else { "corrected" },
            "gauge": c_rows,
            "reverse_orientation": reverse,
        });
        let witnesses = if ok { Vec::new() } else { vec![json!({ "endo": name, "residual": rows(&diff) })] };
        out.push(Check::from_bool(format!("contiguity {name}"), ok, detail, witnesses));
    }
    Ok(out)
}

#[derive(serde::Deserialize)]
struct CommuteFixture {
    n: Vec<i64>,
}

pub fn commute_check(s1: &str, s2: i64, ns: &[i64]) -> Result<Check> {
    let s1q = parse_rational(s1).map_err(err)?;
    let ns = if ns.is_empty() {
        serde_json::from_str::<CommuteFixture>(COMMUTE_CHECK).map_err(err)?.n
    } else {
        ns.to_vec()
    };
    let rep = commute_up_to_gauge(&s1q, s2, &ns).map_err(err)?;
    let bad: Vec<Value> = rep
        .rows
        .iter()
        .filter(|r| !(r.equivalent && r.verified))
        .map(|r| json!({ "n": r.n, "kappa": r.kappa, "shift_after_scale": r.shift_after_scale, "scale_after_shift": r.scale_after_shift }))
        .collect();
    let detail = json!({
        "s1": rep.s1,
        "s2": rep.s2,
        "product": rep.product,
        "uniform": rep.uniform,
        "rows": serde_json::to_value(&rep.rows).expect("rows"),
    });
    Ok(Check::from_bool("commute-check", bad.is_empty(), detail, bad))
}
