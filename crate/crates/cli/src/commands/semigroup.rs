use clap::Subcommand;
use serde_json::json;
use tannakit::semigroup::{exchange_schedule, multiply, normalize_word, FreeProductPresentation, FreeProductWord, RawBlock, Word};

use super::Outcome;
use crate::input::{self, err, Result};
use crate::report::Check;

#[derive(Debug, Subcommand)]
pub enum SemigroupCmd {
    /// Normal form of a string of generator indices, as an exponent vector.
    Normalize {
        /// e.g. '{"free":2,"torsion":[]}'
        #[arg(long)]
        pres: String,
        /// Letters, 1-based, e.g. '[1,2,1]'.
        #[arg(long)]
        word: String,
    },
    /// Product of two exponent vectors and the exchange schedule behind it.
    Multiply {
        #[arg(long)]
        pres: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Normal form of a list of free-product blocks.
    FpNormalize {
        /// List of presentations, one per factor.
        #[arg(long)]
        factors: String,
        /// e.g. '[{"factor":1,"word":[1,0]},{"factor":1,"word":[0,2]}]'
        #[arg(long)]
        blocks: String,
    },
}

fn exps_text(w: &Word) -> String {
    serde_json::to_string(w.exps()).expect("vector")
}

pub fn run(cmd: &SemigroupCmd) -> Result<Outcome> {
    match cmd {
        SemigroupCmd::Normalize { pres, word } => {
            let p = input::presentation(pres)?;
            let letters: Vec<usize> = input::json(word, "word")?;
            let w = normalize_word(&p, &letters).map_err(err)?;
            Ok(Outcome::answer(Check::pass("normalize", json!(w.exps())), exps_text(&w)))
        }
        SemigroupCmd::Multiply { pres, left, right } => {
            let p = input::presentation(pres)?;
            let a = Word::from_exps(&p, input::json(left, "left")?).map_err(err)?;
            let b = Word::from_exps(&p, input::json(right, "right")?).map_err(err)?;
            let prod = multiply(&a, &b).map_err(err)?;
            let steps = exchange_schedule(&a, &b).map_err(err)?;
            let detail = json!({ "product": prod.exps(), "schedule": steps });
            Ok(Outcome::answer(Check::pass("multiply", detail), exps_text(&prod)))
        }
        SemigroupCmd::FpNormalize { factors, blocks } => {
            let fs: Vec<tannakit::semigroup::AbelianPresentation> = input::json(factors, "factors")?;
            let fpp = FreeProductPresentation::new(fs.into_iter().map(std::sync::Arc::new).collect());
            let raw: Vec<RawBlock> = input::json(blocks, "blocks")?;
            let w = FreeProductWord::from_raw(&fpp, &raw).map_err(err)?;
            let text = serde_json::to_string(&w).expect("blocks");
            Ok(Outcome::answer(Check::pass("fp-normalize", serde_json::to_value(&w).expect("blocks")), text))
        }
    }
}
