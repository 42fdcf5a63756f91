//! Command-line front end: experiment configuration, execution, and
//! machine-readable JSON + CSV reporting. Every subcommand is a thin
//! adapter over the library; no statistic is computed here.
//!
//! Exit codes: 0 success, 1 failed acceptance criteria, 2 invalid
//! configuration, 3 numerical failure.

mod config;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{load_config_file, ConfigError, ExperimentConfig, CONFIG_SCHEMA};

#[derive(Parser)]
#[command(
    name = "rmt-lab",
    version,
    about = "Deformed Gaussian random-matrix laboratory: samplers, spectral \
             tail and density estimators, and their verification experiments",
    after_help = "Each run writes <output>.json (inputs, results, fitted \
                  constants, wall clock, seed) and <output>.csv with the fixed \
                  columns statistic,t_or_interval,estimate,ci_lo,ci_hi,n_samples,seed."
)]
struct Cli {
    /// JSON config file; command-line flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the JSON schema for config files and exit.
    #[arg(long, global = true)]
    print_config_schema: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one deformed matrix H = A + lambda V and store it as <output>.hmat.
    Sample(ExperimentConfig),
    /// Tail of ||H^{-1} e_1|| against thresholds t sqrt(N).
    TailVec(ExperimentConfig),
    /// Tails of ||H^{-1}||_F and ||H^{-1}||_op against thresholds t N.
    TailNorm(ExperimentConfig),
    /// Mean density of states over a partition.
    Dos(ExperimentConfig),
    /// P{at least k eigenvalues in an interval}.
    MinamiTail(ExperimentConfig),
    /// Clamped factorial moment over an interval tuple.
    MinamiMoment(ExperimentConfig),
    /// Tail of the ratio of quadratic forms for a diagonal problem.
    Ratio(ExperimentConfig),
    /// Tail of the rank-one ratio |h+b| / |(h+b)^2 - a|.
    RankOne(ExperimentConfig),
    /// Small-ball probability of ||Q phi|| on the unit sphere.
    SmallBall(ExperimentConfig),
    /// Characteristic function of the quadratic-form pair at (xi, eta).
    CharFn(ExperimentConfig),
    /// Schur column identity versus the direct solve on seeded instances.
    SchurCheck(ExperimentConfig),
    /// Cauchy interlacing on seeded (H, phi) instances.
    Interlace(ExperimentConfig),
    /// Sharpness scan: distance, overlap, and inverse-norm medians vs N.
    Sharpness(ExperimentConfig),
    /// Density-scaling contrast at energy zero between the two regimes.
    DosScaling(ExperimentConfig),
    /// Bernoulli-Wigner counterexample scan over deformation scales.
    Counterexample(ExperimentConfig),
    /// Weak-disorder sweep: sup density and tail constants vs lambda.
    WeakDisorder(ExperimentConfig),
    /// Run the acceptance suite (all criteria or --criteria ids).
    Accept(ExperimentConfig),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Sample(_) => "sample",
            Command::TailVec(_) => "tail-vec",
            Command::TailNorm(_) => "tail-norm",
            Command::Dos(_) => "dos",
            Command::MinamiTail(_) => "minami-tail",
            Command::MinamiMoment(_) => "minami-moment",
            Command::Ratio(_) => "ratio",
            Command::RankOne(_) => "rank-one",
            Command::SmallBall(_) => "small-ball",
            Command::CharFn(_) => "char-fn",
            Command::SchurCheck(_) => "schur-check",
            Command::Interlace(_) => "interlace",
            Command::Sharpness(_) => "sharpness",
            Command::DosScaling(_) => "dos-scaling",
            Command::Counterexample(_) => "counterexample",
            Command::WeakDisorder(_) => "weak-disorder",
            Command::Accept(_) => "accept",
        }
    }

    fn take_config(self) -> ExperimentConfig {
        match self {
            Command::Sample(c)
            | Command::TailVec(c)
            | Command::TailNorm(c)
            | Command::Dos(c)
            | Command::MinamiTail(c)
            | Command::MinamiMoment(c)
            | Command::Ratio(c)
            | Command::RankOne(c)
            | Command::SmallBall(c)
            | Command::CharFn(c)
            | Command::SchurCheck(c)
            | Command::Interlace(c)
            | Command::Sharpness(c)
            | Command::DosScaling(c)
            | Command::Counterexample(c)
            | Command::WeakDisorder(c)
            | Command::Accept(c) => c,
        }
    }
}

/// Failure modes mapped to exit codes.
pub enum CliFailure {
    /// Exit 1: acceptance criteria failed.
    CriteriaFailed(usize),
    /// Exit 2: the configuration is invalid.
    Config(String),
    /// Exit 3: a numerical routine failed.
    Numerical(String),
}

impl From<ConfigError> for CliFailure {
    fn from(e: ConfigError) -> Self {
        CliFailure::Config(e.0)
    }
}

impl From<rmt_lab::Error> for CliFailure {
    fn from(e: rmt_lab::Error) -> Self {
        match e {
            rmt_lab::Error::InvalidInput(_) | rmt_lab::Error::Io(_) => {
                CliFailure::Config(e.to_string())
            }
            rmt_lab::Error::NearSingular { .. }
            | rmt_lab::Error::BlockSingular { .. }
            | rmt_lab::Error::NonConvergence { .. } => CliFailure::Numerical(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.print_config_schema {
        print!("{CONFIG_SCHEMA}");
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: missing subcommand; see `rmt-lab --help`");
        return ExitCode::from(2);
    };

    let name = command.name();
    let flags = command.take_config();
    let merged = match cli.config.as_ref() {
        Some(path) => match load_config_file(path) {
            Ok(file) => flags.over(file),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => flags,
    };

    match run::dispatch(name, &merged) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliFailure::CriteriaFailed(count)) => {
            eprintln!("error: {count} acceptance criteria failed");
            ExitCode::from(1)
        }
        Err(CliFailure::Config(msg)) => {
            eprintln!("error: invalid configuration: {msg}");
            ExitCode::from(2)
        }
        Err(CliFailure::Numerical(msg)) => {
            eprintln!("error: numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
