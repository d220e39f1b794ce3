pub mod coherence;
pub mod diffmod;
pub mod hopf;
pub mod paper;
pub mod semigroup;

use crate::report::Check;

/// What a subcommand produced: checks for the report, and optionally a plain
/// answer that replaces the check table in text mode.
pub struct Outcome {
    pub checks: Vec<Check>,
    pub text: Option<String>,
    /// Fixture tables pass when every check matches its pinned status.
    pub pinned: bool,
}

impl Outcome {
    pub fn checks(checks: Vec<Check>) -> Self {
        Outcome { checks, text: None, pinned: false }
    }

    pub fn answer(check: Check, text: String) -> Self {
        Outcome { checks: vec![check], text: Some(text), pinned: false }
    }
}
