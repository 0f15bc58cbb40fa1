//! Config-driven workflows behind the `nmlln` binary: `analyze`,
//! `simulate`, `weaklaw` and `certify`.

pub mod commands;
pub mod config;

pub use commands::{analyze, certify, exit, simulate_csv, weaklaw, CommandError};
pub use config::{ConfigError, ScenarioConfig, ValidatedConfig};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    Simulate,
    Weaklaw,
    Certify,
}

/// Command-line overrides of the `run` section.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub n_max: Option<u64>,
    pub trials: Option<usize>,
    pub budget: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, config: &mut ScenarioConfig) {
        if let Some(seed) = self.seed {
            config.run.seed = seed;
        }
        if let Some(n_max) = self.n_max {
            config.run.n_max = n_max;
            config.run.checkpoints.retain(|&c| c <= n_max);
        }
        if let Some(trials) = self.trials {
            config.run.trials = trials;
        }
        if let Some(budget) = self.budget {
            config.run.budget = budget;
        }
    }
}

/// Parses, overrides and validates a config document.
pub fn load(text: &str, overrides: &Overrides) -> Result<ValidatedConfig, CommandError> {
    let mut config = ScenarioConfig::from_json(text)?;
    overrides.apply(&mut config);
    Ok(config.validate()?)
}

/// Runs one workflow, or returns the canonical config when `dump_config`.
pub fn run(command: Command, text: &str, overrides: &Overrides, dump_config: bool) -> Result<String, CommandError> {
    let config = load(text, overrides)?;
    if dump_config {
        return Ok(config.to_config().to_json());
    }
    match command {
        Command::Analyze => analyze(&config),
        Command::Simulate => simulate_csv(&config),
        Command::Weaklaw => weaklaw(&config),
        Command::Certify => certify(&config),
    }
}
