//! Configuration-driven runner for the `onephoton-core` simulations.
//!
//! A run reads a scenario configuration (see [`config`]), evaluates it and
//! writes a CSV [`table::ResultTable`].

pub mod config;
pub mod error;
pub mod scenario;
pub mod table;

pub use config::{parse_config, parse_config_with, ConfigError, ScenarioConfig};
pub use error::CliError;
pub use scenario::Scenario;
pub use table::{read_table, write_table, ResultTable};

/// Parses `text` with `overrides` and runs the selected scenario.
pub fn run_config_text(
    text: &str,
    overrides: &[String],
) -> Result<(ScenarioConfig, ResultTable), CliError> {
    let config = parse_config_with(text, overrides).map_err(CliError::Validation)?;
    let table = config.scenario.run(&config)?;
    Ok((config, table))
}
