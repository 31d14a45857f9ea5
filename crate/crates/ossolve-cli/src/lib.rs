//! Library side of the `ossolve` command: configuration parsing, the four
//! subcommands and their CSV, SVG and JSON writers.

pub mod commands;
pub mod config;
pub mod format;
pub mod svg;

use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad config or usage; exit code 2.
    Config(String),
    /// Output could not be written; exit code 2.
    Io(String),
    /// A solver failed outright; exit code 3.
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

/// Files written by a run and how many rows failed. Partial output is still
/// written when `failures > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub failures: usize,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failures > 0 {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eigenvalues,
    Eigenfunction,
    Figures,
    Validate,
}

/// Parses the config at `config` for `cmd` and runs it, writing into `out`.
pub fn run(cmd: Command, config: &Path, out: &Path) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(config).map_err(|e| CliError::Config(format!("{}: {e}", config.display())))?;
    run_str(cmd, &text, out)
}

/// As [`run`], with the config given as a JSON string.
pub fn run_str(cmd: Command, text: &str, out: &Path) -> Result<Outcome, CliError> {
    // parse before touching the output directory
    enum Parsed {
        E(config::EigenvaluesConfig),
        F(config::EigenfunctionConfig),
        G(config::FiguresConfig),
        V(config::ValidateConfig),
    }
    let parsed = match cmd {
        Command::Eigenvalues => Parsed::E(config::parse(text)?),
        Command::Eigenfunction => Parsed::F(config::parse(text)?),
        Command::Figures => Parsed::G(config::parse(text)?),
        Command::Validate => Parsed::V(config::parse(text)?),
    };
    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    match parsed {
        Parsed::E(c) => commands::eigenvalues(&c, out),
        Parsed::F(c) => commands::eigenfunction(&c, out),
        Parsed::G(c) => commands::figures(&c, out),
        Parsed::V(c) => commands::validate(&c, out),
    }
}

/// Caps rayon's global pool from `OSSOLVE_THREADS`, if set.
pub fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("OSSOLVE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("OSSOLVE_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(CliError::Config("OSSOLVE_THREADS must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}
