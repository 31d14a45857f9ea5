use clap::{Parser, Subcommand};
use ossolve_cli::{init_threads, run, Command};
use std::path::PathBuf;
use std::process::ExitCode;

/// Orr-Sommerfeld asymptotic eigenvalues, eigenfunctions and checks.
#[derive(Parser)]
#[command(name = "ossolve", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(clap::Args)]
struct Io {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing)
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Sub {
    /// Table of eigenvalues for a mode range
    Eigenvalues(Io),
    /// Eigenfunction profile by the outer or Green's-function method
    Eigenfunction(Io),
    /// Amplitude-versus-Reynolds figure bundle
    Figures(Io),
    /// Asymptotic seeds against the collocation solver
    Validate(Io),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (cmd, io) = match cli.command {
        Sub::Eigenvalues(io) => (Command::Eigenvalues, io),
        Sub::Eigenfunction(io) => (Command::Eigenfunction, io),
        Sub::Figures(io) => (Command::Figures, io),
        Sub::Validate(io) => (Command::Validate, io),
    };
    if let Err(e) = init_threads() {
        eprintln!("ossolve: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    match run(cmd, &io.config, &io.out) {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("{}", f.display());
            }
            if outcome.failures > 0 {
                eprintln!("ossolve: {} row(s) failed; partial output written", outcome.failures);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("ossolve: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
