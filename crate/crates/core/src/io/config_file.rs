//! Config files are TOML. Every key is optional and defaults to the standard
//! parameter set; unknown keys are rejected with their path and position.

use crate::config::{ConfigError, SimulationConfig};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigFileError {
    /// Syntax error or unknown/ill-typed key; the message carries the key
    /// path and line/column.
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Invalid(#[from] ConfigError),
}

/// Parse and validate a config document. Omitted keys take their defaults;
/// the result is always a fully validated config.
pub fn parse_config(text: &str) -> Result<SimulationConfig, ConfigFileError> {
    let cfg: SimulationConfig = toml::from_str(text)?;
    cfg.validate()?;
    Ok(cfg)
}

/// Render a config back to TOML (used to record the resolved config of a
/// run).
pub fn to_toml(cfg: &SimulationConfig) -> String {
    toml::to_string_pretty(cfg).expect("config serializes to TOML")
}
