//! Global options: command-line flags win over the config file, which wins
//! over `FUCHSIA_EPS`, which wins over the built-in default.

use std::path::Path;

use fuchsia_core::EPS_MEMBERSHIP;
use serde::Deserialize;

use crate::commands::Failure;
use crate::Format;

pub const EPS_ENV: &str = "FUCHSIA_EPS";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    eps: Option<f64>,
    seed: Option<u64>,
    format: Option<Format>,
    max_steps: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub eps: f64,
    /// Set when the flag or the config file gave a tolerance; verify
    /// documents may carry their own otherwise.
    pub eps_explicit: bool,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub max_steps: Option<usize>,
}

impl Settings {
    pub fn resolve(
        eps: Option<f64>,
        seed: Option<u64>,
        format: Option<Format>,
        config: Option<&Path>,
    ) -> Result<Self, Failure> {
        let file = match config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Failure::config(format!("cannot read {}: {e}", path.display()))
                })?;
                serde_json::from_str::<FileConfig>(&text)
                    .map_err(|e| Failure::config(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let explicit = eps.or(file.eps);
        let env = match std::env::var(EPS_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Failure::config(format!("{EPS_ENV}={s:?}: {e}")))?,
            ),
            Err(_) => None,
        };
        let eps = explicit.or(env).unwrap_or(EPS_MEMBERSHIP);
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(Failure::config(format!("eps must be finite and >= 0, got {eps}")));
        }
        Ok(Settings {
            eps,
            eps_explicit: explicit.is_some(),
            seed: seed.or(file.seed),
            format: format.or(file.format),
            max_steps: file.max_steps,
        })
    }
}
