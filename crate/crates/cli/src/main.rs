use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use onephoton_cli::{parse_config_with, run_config_text, write_table, CliError, Scenario};

#[derive(Parser)]
#[command(
    name = "onephoton",
    version,
    about = "Single-photon atom-field simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario configuration and write its CSV table.
    Run {
        config: PathBuf,
        /// Output path; defaults to the config's `output` key, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace a configuration value, `key=value`. Repeatable.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// List the available scenarios and their parameters.
    ListScenarios,
    /// Check a configuration without running it.
    Validate {
        config: PathBuf,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<(), CliError> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            config,
            out,
            overrides,
        } => {
            let text = read(&config)?;
            let (cfg, table) = run_config_text(&text, &overrides)?;
            match out.or(cfg.output) {
                Some(path) => write_table(&table, &path)?,
                None => emit(&table.to_csv())?,
            }
        }
        Command::ListScenarios => {
            let mut text = String::new();
            for s in Scenario::ALL {
                text.push_str(&format!("{:<16} {}\n", s.name(), s.description()));
                for p in s.parameters() {
                    let default = p
                        .default
                        .map(|v| v.to_string())
                        .unwrap_or_else(|| "required".into());
                    text.push_str(&format!("    {:<18} {:<22} {}\n", p.key, default, p.doc));
                }
            }
            emit(&text)?;
        }
        Command::Validate { config, overrides } => {
            let text = read(&config)?;
            let cfg = parse_config_with(&text, &overrides).map_err(CliError::Validation)?;
            emit(&format!(
                "{}: ok ({})\n",
                config.display(),
                cfg.scenario.name()
            ))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
