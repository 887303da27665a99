//! Command-line pipeline: `search`, `basis`, `harvest`, `extend`, `solve`,
//! `dlog`, `verify` and `stats`, each reading the artifacts of the previous
//! stage from a work directory.

pub mod pipeline;
pub mod stats;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

pub use pipeline::{Target, Workspace};

/// Environment variable that overrides `--workers`.
pub const WORKERS_ENV: &str = "ELLBASIS_WORKERS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("missing stage: {0}")]
    StageMissing(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::StageMissing(_) => 3,
            CliError::Verification(_) => 4,
            CliError::SearchExhausted(_) => 5,
            CliError::Other(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<crate::basis::BasisError> for CliError {
    fn from(e: crate::basis::BasisError) -> Self {
        match e {
            crate::basis::BasisError::SearchExhausted(m) => CliError::SearchExhausted(m),
            e => CliError::Other(e.to_string()),
        }
    }
}

impl From<crate::solve::SolveError> for CliError {
    fn from(e: crate::solve::SolveError) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<crate::harvest::HarvestError> for CliError {
    fn from(e: crate::harvest::HarvestError) -> Self {
        CliError::Other(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p: u64,
    pub m0: usize,
    pub k: usize,
    pub seed: u64,
    pub base_height: usize,
    pub extended_height: usize,
    pub sieve_budget: Option<usize>,
    /// Relations wanted per active unknown.
    pub slack: f64,
    pub t_a: usize,
    pub t_b: usize,
    pub d0: usize,
    pub small_prime_threshold: u128,
    pub dir: PathBuf,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 5,
            m0: 1,
            k: 9,
            seed: 0,
            base_height: 3,
            extended_height: 5,
            sieve_budget: None,
            slack: 1.2,
            t_a: 2,
            t_b: 1,
            d0: 4,
            small_prime_threshold: 1 << 20,
            dir: PathBuf::from("."),
            workers: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.p < 5 || crate::curve::prime_factors(self.p) != vec![self.p] {
            return Err(CliError::Config(format!("p = {} must be a prime >= 5", self.p)));
        }
        if self.k < 3 {
            return Err(CliError::Config(format!("k = {} must be at least 3", self.k)));
        }
        if self.m0 == 0 {
            return Err(CliError::Config("m0 must be positive".into()));
        }
        if self.base_height != 3 || !(3..=5).contains(&self.extended_height) {
            return Err(CliError::Config("heights: base must be 3, extended between 3 and 5".into()));
        }
        if self.t_a < self.t_b || self.t_b == 0 {
            return Err(CliError::Config("descent needs t_a >= t_b >= 1".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Config("workers must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "ellbasis", version, about = "Index calculus in F_{q^k} over an elliptic basis")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Work directory holding the artifacts.
    #[arg(long, global = true, default_value = ".")]
    dir: PathBuf,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prime powers of M below this are solved by BSGS instead of relations.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    small_prime_threshold: u128,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Find a curve with a point of order k and write its descriptor.
    Search {
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m0: usize,
        #[arg(long, default_value_t = 9)]
        k: usize,
    },
    /// Build basis.json from the descriptor.
    Basis,
    /// Run the core sieve into relations.txt.
    Harvest {
        /// Number of sieve pairs to try.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 1.2)]
        slack: f64,
    },
    /// Height 4 and 5 logs; appends their relations and writes logs.txt.
    Extend {
        #[arg(long, default_value_t = 5)]
        height: usize,
    },
    /// Linear algebra over relations.txt into logs.txt.
    Solve,
    /// Log of a target given as hex, read as base-q digits of its coordinates.
    Dlog {
        #[arg(long, conflicts_with = "planted")]
        target: Option<String>,
        /// Uses `g^x` as the target.
        #[arg(long)]
        planted: Option<u128>,
        #[arg(long, default_value_t = 2)]
        t_a: usize,
        #[arg(long, default_value_t = 1)]
        t_b: usize,
        #[arg(long, default_value_t = 4)]
        d0: usize,
    },
    /// Re-check sampled relations through Psi and sampled logs through BSGS.
    Verify {
        #[arg(long, default_value_t = 20)]
        sample: usize,
    },
    /// Polynomial splitting rates against the predicted constants.
    Stats {
        #[arg(long, default_value_t = 121)]
        q: u64,
        /// One degree; all four predicted cases when omitted.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

fn workers(flag: usize) -> Result<usize, CliError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|w| *w > 0)
            .ok_or_else(|| CliError::Config(format!("{WORKERS_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(flag),
    }
}

/// Parses the arguments, runs one command and returns its report.
pub fn run<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(e.to_string())
        }
        Err(e) => return Err(CliError::Config(e.to_string())),
    };
    let mut cfg = RunConfig {
        dir: cli.common.dir,
        workers: workers(cli.common.workers)?,
        seed: cli.common.seed,
        small_prime_threshold: cli.common.small_prime_threshold,
        ..RunConfig::default()
    };
    let ws = Workspace::new(&cfg.dir)?;
    match cli.cmd {
        Cmd::Search { p, m0, k } => {
            (cfg.p, cfg.m0, cfg.k) = (p, m0, k);
            cfg.validate()?;
            pipeline::search(&ws, &cfg)
        }
        Cmd::Basis => pipeline::basis(&ws, &cfg),
        Cmd::Harvest { budget, slack } => {
            cfg.sieve_budget = budget;
            cfg.slack = slack;
            cfg.validate()?;
            pipeline::harvest(&ws, &cfg)
        }
        Cmd::Extend { height } => {
            cfg.extended_height = height;
            cfg.validate()?;
            pipeline::extend(&ws, &cfg)
        }
        Cmd::Solve => pipeline::solve(&ws, &cfg),
        Cmd::Dlog { target, planted, t_a, t_b, d0 } => {
            (cfg.t_a, cfg.t_b, cfg.d0) = (t_a, t_b, d0);
            cfg.validate()?;
            let t = match (target, planted) {
                (Some(h), None) => Target::Hex(h),
                (None, Some(x)) => Target::Planted(x),
                _ => return Err(CliError::Config("give exactly one of --target and --planted".into())),
            };
            pipeline::dlog(&ws, &cfg, &t)
        }
        Cmd::Verify { sample } => pipeline::verify(&ws, &cfg, sample),
        Cmd::Stats { q, degree, samples } => stats::report(q, degree, samples, cfg.seed),
    }
}

/// Entry point of the binary; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run(args) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
