pub mod convergence;
pub mod corner;
pub mod dtn;
pub mod simulate;

use std::path::PathBuf;

use crate::config::ScenarioConfig;
use crate::error::CliResult;

/// `--config` if given, else the built-in quarter-plane scenario.
pub(crate) fn scenario(path: Option<&PathBuf>) -> CliResult<ScenarioConfig> {
    match path {
        Some(p) => ScenarioConfig::load(p),
        None => Ok(ScenarioConfig::default()),
    }
}
