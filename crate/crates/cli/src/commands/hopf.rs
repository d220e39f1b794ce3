use clap::{Args, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};
use tannakit::hopf::{
    comodule_axioms, coassociativity_defect, counit_defect, antipode_defect, det_comodule, gpoly_from_json, l_filtration,
    ord, random_element, standard_comodule, GPoly, GRing, GlnHopf, TermJson, DEFAULT_BASIS_CAP,
};
use tannakit::semigroup::words_up_to;

use super::Outcome;
use crate::input::{self, err, Result};
use crate::report::Check;

#[derive(Debug, Args)]
pub struct RingArgs {
    /// The semigroup, e.g. '{"free":1}'.
    #[arg(long, default_value = r#"{"free":1}"#)]
    pub pres: String,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum HopfCmd {
    /// Hopf algebra laws on generators and random elements, comodule axioms
    /// on the standard and determinant comodules.
    CheckAxioms {
        #[command(flatten)]
        ring: RingArgs,
        /// Words up to this length.
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// Number of random elements.
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Largest word length among the indeterminates of a polynomial.
    Ord {
        #[command(flatten)]
        ring: RingArgs,
        /// Terms `[{"coeff":"2","vars":{"x[1][1]@[1]":1}}, ...]`.
        #[arg(long)]
        poly: String,
    },
    /// The subcomodule `L_{r,s,p}` and its certificate.
    Filtration {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value_t = 0)]
        p: usize,
        /// Refuse bases larger than this.
        #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
        cap: usize,
    },
}

fn ring(a: &RingArgs) -> Result<std::sync::Arc<GRing>> {
    if a.n == 0 {
        return Err(input::InputError("n must be at least 1".into()));
    }
    Ok(GRing::new(input::presentation(&a.pres)?, a.n))
}

fn defects(f: &GPoly) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    if !coassociativity_defect(f).map_err(err)?.is_zero() {
        out.push("coassociativity");
    }
    let (l, r) = counit_defect(f).map_err(err)?;
    if !(l.is_zero() && r.is_zero()) {
        out.push("counit");
    }
    let (l, r) = antipode_defect(f).map_err(err)?;
    if !(l.is_zero() && r.is_zero()) {
        out.push("antipode");
    }
    Ok(out)
}

pub fn run(cmd: &HopfCmd) -> Result<Outcome> {
    let checks = match cmd {
        HopfCmd::CheckAxioms { ring: ra, p, random, seed } => {
            let r = ring(ra)?;
            let words = words_up_to(&r.pres, *p);
            let h = GlnHopf::new(r.clone());
            let mut rng = StdRng::seed_from_u64(*seed);
            let gens = h.generators(&words);
            let samples: Vec<GPoly> = (0..*random).map(|_| random_element(&mut rng, &r, &words, 2, true)).collect();
            let mut bad = Vec::new();
            for f in gens.iter().chain(&samples) {
                let d = defects(f)?;
                if !d.is_empty() {
                    bad.push(json!({ "element": f.to_string(), "defects": d }));
                }
            }
            let hopf = Check::from_bool(
                "hopf-laws",
                bad.is_empty(),
                json!({ "generators": gens.len(), "random": samples.len(), "seed": seed }),
                bad,
            );
            let mut bad = Vec::new();
            let mut comodules = 0;
            for w in &words {
                for (name, v) in [("standard", standard_comodule(&r, w)), ("det", det_comodule(&r, w))] {
                    comodules += 1;
                    let rep = comodule_axioms(&v).map_err(err)?;
                    if !rep.passed() {
                        bad.push(json!({ "comodule": name, "word": w.exps(), "report": serde_json::to_value(&rep).expect("report") }));
                    }
                }
            }
            vec![hopf, Check::from_bool("comodule-axioms", bad.is_empty(), json!({ "comodules": comodules }), bad)]
        }
        HopfCmd::Ord { ring: ra, poly } => {
            let r = ring(ra)?;
            let terms: Vec<TermJson> = input::json(poly, "poly")?;
            let f = gpoly_from_json(&r, &terms).map_err(err)?;
            let o = ord(&f).map_err(err)?;
            vec![Check::pass("ord", json!({ "poly": f.to_string(), "ord": o }))]
        }
        HopfCmd::Filtration { ring: ra, r, s, p, cap } => {
            let g = ring(ra)?;
            let rep = l_filtration(&g, *r, *s, *p, *cap).map_err(err)?;
            let mut detail = serde_json::to_value(&rep).expect("report");
            if rep.dim <= 64 {
                detail["basis"] = json!(rep.basis().iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            let mut witnesses: Vec<Value> =
                rep.failures.iter().map(|&i| json!({ "basis_element": rep.basis()[i].to_string() })).collect();
            if rep.dim != rep.expected_dim {
                witnesses.push(json!({ "dim": rep.dim, "expected_dim": rep.expected_dim }));
            }
            if !rep.equivariant {
                witnesses.push(json!({ "equivariant": false }));
            }
            if !rep.action_compatible {
                witnesses.push(json!({ "action_compatible": false }));
            }
            vec![Check::from_bool("filtration", rep.passed(), detail, witnesses)]
        }
    };
    Ok(Outcome::checks(checks))
}
