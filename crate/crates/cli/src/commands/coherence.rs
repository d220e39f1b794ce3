use std::sync::Arc;

use clap::{Args, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tannakit::coherence::random::{random_category, random_valid_action, IsoKind, RandomSpec};
use tannakit::coherence::{combine_free_product, parse_action, ActionData, Report};

use super::Outcome;
use crate::input::{self, err, Result};
use crate::report::Check;

#[derive(Debug, Args)]
pub struct ActionArg {
    /// Action data, as a path or inline JSON.
    #[arg(long)]
    pub action: String,
}

#[derive(Debug, Subcommand)]
pub enum CoherenceCmd {
    /// Hexagon condition for every triple of distinct generators.
    Hexagon(ActionArg),
    /// Compatibility of each torsion isomorphism with its own functor.
    Torsion(ActionArg),
    /// Torsion isomorphisms against exchanges with the other generators.
    TorsionExchange(ActionArg),
    /// Naturality of every stored isomorphism on the generating morphisms.
    Naturality(ActionArg),
    /// Brute-force associativity of the extended isomorphisms.
    Assoc {
        #[command(flatten)]
        action: ActionArg,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// All of the above.
    Check {
        #[command(flatten)]
        action: ActionArg,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Combine actions of several presentations into one of their free
    /// product; checks restriction and associativity.
    Free {
        /// One action per factor, in order; all over the same category.
        #[arg(long = "action", required = true)]
        actions: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_blocks: usize,
        #[arg(long, default_value_t = 2)]
        max_block_len: usize,
    },
    /// Random data satisfying hexagon and torsion, checked for associativity.
    Sweep {
        #[arg(long, default_value = r#"{"free":2}"#)]
        pres: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Mixed)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Identity,
    Scalar,
    PadSwap,
    /// Cycle through the three.
    Mixed,
}

pub fn load(arg: &str) -> Result<ActionData> {
    parse_action(&input::text(arg)?).map_err(err)
}

pub fn to_check(name: &str, rep: &Report) -> Check {
    let witnesses: Vec<Value> = rep.failures.iter().map(|f| serde_json::to_value(f).expect("failure")).collect();
    Check::from_bool(name, rep.passed(), json!({ "checked": rep.checked }), witnesses)
}

pub fn local_checks(d: &ActionData) -> Result<Vec<Check>> {
    Ok(vec![
        to_check("naturality", &d.check_naturality().map_err(err)?),
        to_check("hexagon", &d.check_hexagon().map_err(err)?),
        to_check("torsion", &d.check_torsion().map_err(err)?),
        to_check("torsion-exchange", &d.check_torsion_exchange().map_err(err)?),
    ])
}

pub fn run(cmd: &CoherenceCmd) -> Result<Outcome> {
    let checks = match cmd {
        CoherenceCmd::Hexagon(a) => vec![to_check("hexagon", &load(&a.action)?.check_hexagon().map_err(err)?)],
        CoherenceCmd::Torsion(a) => vec![to_check("torsion", &load(&a.action)?.check_torsion().map_err(err)?)],
        CoherenceCmd::TorsionExchange(a) => {
            vec![to_check("torsion-exchange", &load(&a.action)?.check_torsion_exchange().map_err(err)?)]
        }
        CoherenceCmd::Naturality(a) => vec![to_check("naturality", &load(&a.action)?.check_naturality().map_err(err)?)],
        CoherenceCmd::Assoc { action, max_len } => {
            vec![to_check("associativity", &load(&action.action)?.verify_associativity(*max_len).map_err(err)?)]
        }
        CoherenceCmd::Check { action, max_len } => {
            let d = load(&action.action)?;
            let mut out = local_checks(&d)?;
            out.push(to_check("associativity", &d.verify_associativity(*max_len).map_err(err)?));
            out
        }
        CoherenceCmd::Free { actions, max_blocks, max_block_len } => {
            let parts = actions.iter().map(|a| load(a)).collect::<Result<Vec<_>>>()?;
            let fp = combine_free_product(parts.clone()).map_err(err)?;
            let back = fp.restrict().map_err(err)?;
            let mismatched: Vec<Value> =
                back.iter().zip(&parts).enumerate().filter(|(_, (b, p))| b != p).map(|(k, _)| json!({ "factor": k + 1 })).collect();
            vec![
                Check::from_bool("restrict", mismatched.is_empty(), json!({ "factors": parts.len() }), mismatched),
                to_check("associativity", &fp.verify_associativity(*max_blocks, *max_block_len).map_err(err)?),
            ]
        }
        CoherenceCmd::Sweep { pres, count, seed, kind, max_len } => sweep(&input::presentation(pres)?, *count, *seed, *kind, *max_len)?,
    };
    Ok(Outcome::checks(checks))
}

fn sweep(pres: &Arc<tannakit::semigroup::AbelianPresentation>, count: usize, seed: u64, kind: Kind, max_len: usize) -> Result<Vec<Check>> {
    let kinds = [IsoKind::Identity, IsoKind::Scalar, IsoKind::PadSwap];
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut invalid, mut nonassoc, mut mispredicted) = (Vec::new(), Vec::new(), Vec::new());
    let mut triples = 0;
    for k in 0..count {
        let kind = match kind {
            Kind::Identity => IsoKind::Identity,
            Kind::Scalar => IsoKind::Scalar,
            Kind::PadSwap => IsoKind::PadSwap,
            Kind::Mixed => kinds[k % 3],
        };
        let spec = RandomSpec { presentation: pres.clone(), kind, max_pad: 1, transport: true };
        let twisted = rng.gen_bool(0.5);
        let cat = Arc::new(random_category(&mut rng, twisted));
        let d = random_valid_action(&mut rng, cat, &spec).map_err(err)?;
        if !(d.check_hexagon().map_err(err)?.passed() && d.check_torsion().map_err(err)?.passed()) {
            invalid.push(json!({ "dataset": k }));
            continue;
        }
        let rep = d.verify_associativity(max_len).map_err(err)?;
        triples += rep.checked;
        if !rep.passed() {
            let first = serde_json::to_value(&rep.failures[0]).expect("failure");
            nonassoc.push(json!({ "dataset": k, "failures": rep.failures.len(), "first": first }));
        }
        if rep.passed() != d.check_torsion_exchange().map_err(err)?.passed() {
            mispredicted.push(json!({ "dataset": k }));
        }
    }
    let detail = json!({ "datasets": count, "seed": seed, "presentation": pres.to_string(), "triples": triples });
    Ok(vec![
        Check::from_bool("generator-valid", invalid.is_empty(), json!({ "datasets": count }), invalid),
        Check::from_bool("associativity", nonassoc.is_empty(), detail, nonassoc),
        Check::from_bool("torsion-exchange-predicts", mispredicted.is_empty(), json!({ "datasets": count }), mispredicted),
    ])
}
