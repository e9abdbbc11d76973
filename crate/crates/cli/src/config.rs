//! Search budgets: defaults sized to the input, then the config file, the
//! `KNOTOID_MAX_STATES` guard, and finally command-line flags.

use std::path::Path;

use anyhow::{Context, Result};
use knotoid::moves::Budget;
use knotoid::Diagram;
use serde::Deserialize;

pub const STATES_ENV: &str = "KNOTOID_MAX_STATES";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub max_crossings: Option<usize>,
    pub max_height: Option<usize>,
    pub max_states: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Overrides {
    pub max_crossings: Option<usize>,
    pub max_height: Option<usize>,
    pub max_states: Option<usize>,
}

pub fn env_states() -> Result<Option<usize>> {
    match std::env::var(STATES_ENV) {
        Ok(v) => v.trim().parse().map(Some).with_context(|| format!("{STATES_ENV}={v} is not a count")),
        Err(_) => Ok(None),
    }
}

pub fn resolve(d: &Diagram, config: &Config, env_states: Option<usize>, flags: Overrides) -> Budget {
    let mut b = Budget::default_for(d);
    b.max_crossings = flags.max_crossings.or(config.max_crossings).unwrap_or(b.max_crossings);
    b.max_height = flags.max_height.or(config.max_height).unwrap_or(b.max_height);
    b.max_states = flags.max_states.or(env_states).or(config.max_states).unwrap_or(b.max_states);
    b
}
