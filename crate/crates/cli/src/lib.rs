//! Command-line driver: `sectors`, `run`, `verify` and `orbits`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use symqaoa_core::Error;

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use commands::Context;
use config::ExperimentConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("verification failed:\n{0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Io(_) => EXIT_CONFIG,
            Self::Refused(_) => EXIT_REFUSED,
            Self::Verification(_) => EXIT_VERIFICATION,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::CapExceeded { .. } | Error::TooManySites { .. } => Self::Refused(err.to_string()),
            Error::SymmetryViolation { ref permutation } => {
                Self::Refused(format!("objective is not invariant under site permutation {permutation:?}"))
            }
            other => Self::Config(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "symqaoa", version, about = "Symmetry-reduced QAOA experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Experiment configuration (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides `run.seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output prefix for `<prefix>.json` and `<prefix>.csv`.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Sector dimensions of the configured space.
    Sectors,
    /// Full-space and sector-restricted QAOA runs.
    Run,
    /// The invariant battery.
    Verify,
    /// Orbits of the configured symmetry group.
    Orbits,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Self::Sectors => "sectors",
            Self::Run => "run",
            Self::Verify => "verify",
            Self::Orbits => "orbits",
        }
    }
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    let config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None if matches!(cli.command, Command::Verify) => ExperimentConfig::default(),
        None => return Err(CliError::Config("--config is required for this subcommand".into())),
    };
    let prefix = cli
        .out
        .clone()
        .or_else(|| config.output.as_ref().map(|o| o.prefix.clone()))
        .unwrap_or_else(|| cli.command.name().to_string());
    let ctx = Context {
        config,
        seed: cli.seed,
        prefix,
    };
    match cli.command {
        Command::Sectors => commands::sectors(&ctx),
        Command::Run => commands::run(&ctx),
        Command::Verify => commands::verify(&ctx, None),
        Command::Orbits => commands::orbits_cmd(&ctx),
    }
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(CliError::Config("--jobs must be positive".into())),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(CliError::Config(format!("--jobs: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(text) => {
            println!("{text}");
            EXIT_OK
        }
        Err(CliError::Verification(text)) => {
            println!("{text}");
            log::error!("verification failed");
            EXIT_VERIFICATION
        }
        Err(e) => {
            log::error!("{e}");
            e.exit_code()
        }
    }
}
