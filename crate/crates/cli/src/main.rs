//! Batch front end for the DKP equation toolkit.
//!
//! Every subcommand reads plain flags or a JSON config, runs the named
//! experiment deterministically, writes its artifacts under `--out`, and
//! exits 0 when all configured tolerances pass, 1 on a tolerance failure,
//! and 2 on usage or config errors.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::RepName;

#[derive(Parser)]
#[command(name = "dkp", version, about = "Batch driver for the DKP equation toolkit")]
struct Cli {
    /// Directory for reports and array outputs.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Seed for generated random states; overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Multiplies every pass/fail tolerance.
    #[arg(long, global = true, default_value_t = 1.0)]
    tol_scale: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining matrix identities and emit a residual report.
    VerifyAlgebra {
        /// Representation to check; all three when omitted.
        #[arg(long, value_enum)]
        rep: Option<RepName>,
    },
    /// Run a grid evolution from a config file.
    Evolve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Measure causal-support leakage of a wave-front run.
    Lightcone {
        #[arg(long)]
        config: PathBuf,
    },
    /// Evolve a two-particle state and report exchange and conservation residuals.
    TwoParticle {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the exchange factor and symmetry verdict for a label pair.
    ExchangePhase {
        /// Spin of the representation hosting the labels.
        #[arg(long, value_enum)]
        spin: SpinArg,
        /// Rotation label of the first particle.
        #[arg(long, allow_negative_numbers = true)]
        k: f64,
        /// Rotation label of the second particle; fixes the exchange factor.
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
    },
    /// Verify the discrete symmetry maps and emit a residual table.
    Symmetries {
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpinArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Half,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    All,
    C,
    P,
    T,
    Tpc,
}

impl std::fmt::Display for CheckArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CheckArg::All => "all",
            CheckArg::C => "c",
            CheckArg::P => "p",
            CheckArg::T => "t",
            CheckArg::Tpc => "tpc",
        };
        f.write_str(name)
    }
}

/// Failure classes mapped to exit codes: usage/config problems exit 2,
/// tolerance failures exit 1.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Tolerance(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("config: {e}"))
    }
}

impl From<dkp_core::CoreError> for CliError {
    fn from(e: dkp_core::CoreError) -> Self {
        CliError::Usage(e.to_string())
    }
}

struct Ctx {
    out: PathBuf,
    seed: Option<u64>,
    tol_scale: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version print to stdout and exit 0; real usage
            // errors go to stderr and exit 2
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx {
        out: cli.out,
        seed: cli.seed,
        tol_scale: cli.tol_scale,
    };
    let outcome = match cli.command {
        Command::VerifyAlgebra { rep } => commands::verify_algebra(rep, &ctx),
        Command::Evolve { config } => commands::evolve(&config, &ctx),
        Command::Lightcone { config } => commands::lightcone(&config, &ctx),
        Command::TwoParticle { config } => commands::two_particle(&config, &ctx),
        Command::ExchangePhase { spin, k, l } => commands::exchange_phase(spin, k, l),
        Command::Symmetries { check } => commands::symmetries(check, &ctx),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Tolerance(msg)) => {
            eprintln!("tolerance failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
