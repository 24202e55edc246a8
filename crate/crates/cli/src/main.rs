//! `fracgreen` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input or
//! parameters outside a method's domain, 3 a tolerance could not be reached.

mod commands;
mod config;
mod output;
mod ranges;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Config;
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "fracgreen", version, about = "Periodic Green function of the killed fractional Laplacian")]
struct Cli {
    /// `key = value` file presetting tol, format, seed, n, grid_points, p_max, resolution, threads, ks_threshold.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate G at one or more points.
    Eval(EvalArgs),
    /// Run property checks and write a JSON report array.
    Verify(VerifyArgs),
    /// Monte Carlo estimate of G with a deterministic reference value.
    Mc(McArgs),
    /// Certified sign changes of G for alpha in [2, 4].
    Zeros(ZerosArgs),
    /// Evaluate G on the Cartesian product of alpha, c and x values.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Series,
    Periodized,
    Ml,
    Closed,
}

impl EvalMethod {
    pub fn method(self) -> fracgreen::params::Method {
        use fracgreen::params::Method;
        match self {
            EvalMethod::Series => Method::Series,
            EvalMethod::Periodized => Method::Periodized,
            EvalMethod::Ml => Method::MlIntegral,
            EvalMethod::Closed => Method::ClosedForm2,
        }
    }
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub c: f64,
    /// Point or range `a:b:n`; repeatable. `pi` is accepted.
    #[arg(long, required = true, allow_negative_numbers = true)]
    pub x: Vec<String>,
    #[arg(long, value_enum)]
    pub method: Option<EvalMethod>,
    /// Absolute tolerance (default 1e-8).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Cm,
    Unimodal,
    Boundary,
    Cross,
    Factorization,
    Normalization,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub c: f64,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Interior grid points (default 50).
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Highest derivative order for the monotonicity check (default 6).
    #[arg(long)]
    pub p_max: Option<u32>,
    /// Seed for the factorization sampler (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// KS threshold for the factorization check (default 0.02).
    #[arg(long)]
    pub ks_threshold: Option<f64>,
    /// Report file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Estimator {
    Jtp,
    Poisson,
}

#[derive(Args, Debug)]
pub struct McArgs {
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub c: f64,
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub x: f64,
    #[arg(long, value_enum)]
    pub estimator: Estimator,
    /// Number of samples (default 100000).
    #[arg(long)]
    pub n: Option<u64>,
    /// Seed (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct ZerosArgs {
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true, value_parser = ranges::parse_number)]
    pub c: f64,
    /// Grid points on (0, pi] (default 2000).
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Value or range `a:b:n`; repeatable.
    #[arg(long, required = true, allow_negative_numbers = true)]
    pub alpha: Vec<String>,
    #[arg(long, required = true, allow_negative_numbers = true)]
    pub c: Vec<String>,
    #[arg(long, required = true, allow_negative_numbers = true)]
    pub x: Vec<String>,
    #[arg(long, value_enum)]
    pub method: Option<EvalMethod>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads; takes precedence over FRACGREEN_THREADS.
    #[arg(long, value_name = "N")]
    pub parallel: Option<usize>,
}

/// A failed command and its exit code.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    Domain(String),
    Tolerance(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Tolerance(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Domain(m) | Failure::Tolerance(m) => m,
        }
    }
}

impl From<fracgreen::error::Error> for Failure {
    fn from(e: fracgreen::error::Error) -> Self {
        use fracgreen::error::Error;
        match e {
            Error::OutOfDomain { .. } | Error::Divergent(_) => Failure::Domain(e.to_string()),
            Error::ToleranceUnreachable(_) | Error::NumericalInstability(_) => Failure::Tolerance(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = match &cli.config {
        Some(p) => Config::load(p).map_err(Failure::Domain)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Eval(a) => commands::eval(&a, &config),
        Command::Verify(a) => commands::verify(&a, &config),
        Command::Mc(a) => commands::mc(&a, &config),
        Command::Zeros(a) => commands::zeros(&a, &config),
        Command::Table(a) => commands::table(&a, &config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
