//! Reading JSON arguments: inline text or a file path.

use std::fs;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use tannakit::semigroup::AbelianPresentation;

/// Malformed input; the binary exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub type Result<T> = std::result::Result<T, InputError>;

pub fn err(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

/// Text that starts with `{` or `[` is taken as inline JSON, anything else
/// as a path.
pub fn text(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| InputError(format!("{arg}: {e}")))
}

pub fn json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    serde_json::from_str(&text(arg)?).map_err(|e| InputError(format!("{what}: {e}")))
}

pub fn presentation(arg: &str) -> Result<Arc<AbelianPresentation>> {
    json(arg, "presentation").map(Arc::new)
}

pub fn write(path: &str, value: &impl serde::Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(err)?;
    fs::write(path, s + "\n").map_err(|e| InputError(format!("{path}: {e}")))
}
