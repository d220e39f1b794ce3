//! Command-line front end for `tannakit`.

pub mod commands;
pub mod input;
pub mod report;

use clap::{Parser, Subcommand};

use commands::coherence::CoherenceCmd;
use commands::diffmod::DiffmodCmd;
use commands::hopf::HopfCmd;
use commands::paper::PaperArgs;
use commands::semigroup::SemigroupCmd;
use commands::Outcome;

#[derive(Debug, Parser)]
#[command(name = "tannakit", version, about = "Semigroup actions on categories, difference-differential modules, GL_n Hopf algebras")]
pub struct Cli {
    /// Print the JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    #[command(subcommand)]
    Semigroup(SemigroupCmd),
    #[command(subcommand)]
    Coherence(CoherenceCmd),
    #[command(subcommand)]
    Diffmod(DiffmodCmd),
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Worked examples with pinned outcomes.
    PaperExamples(PaperArgs),
}

pub fn run(cli: &Cli) -> input::Result<Outcome> {
    match &cli.cmd {
        Cmd::Semigroup(c) => commands::semigroup::run(c),
        Cmd::Coherence(c) => commands::coherence::run(c),
        Cmd::Diffmod(c) => commands::diffmod::run(c),
        Cmd::Hopf(c) => commands::hopf::run(c),
        Cmd::PaperExamples(a) => commands::paper::run(a),
    }
}
