use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod distance;
mod dynamics;
mod output;
mod scatter;
mod surfaces;

use chandist::channel::schema::SchemaError;

/// Entropic distinguishability of quantum channels.
#[derive(Debug, Parser)]
#[command(name = "chandist", version, about)]
struct Cli {
    /// Seed for every random draw (random pairs, optimizer restarts).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; `distance` defaults to json, the rest to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance between two channels given as JSON files.
    Distance(distance::Args),
    /// Level sets of a distance from a fixed channel inside the Pauli tetrahedron.
    TetraSurface(surfaces::TetraArgs),
    /// Distances among phase flip, identity and depolarizing noise of strength x.
    TeleportNoise(surfaces::TeleportArgs),
    /// Distinguishing two Hamiltonian evolutions under depolarizing noise.
    Hamiltonian(dynamics::Args),
    /// Square-root trace and entropic bounds over random Pauli pairs.
    BoundsScatter(scatter::Args),
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or mismatched dimensions.
    Schema(String),
    /// A channel or parameter violates a physical invariant.
    Invariant(String),
    /// The optimizer stopped before converging; the result was still written.
    NotConverged(String),
    /// A property that must hold on the computed data failed.
    Check(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::NotConverged(_) => 4,
            CliError::Check(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "input error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violated: {m}"),
            CliError::NotConverged(m) => write!(f, "optimizer did not converge: {m}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<chandist::Error> for CliError {
    fn from(e: chandist::Error) -> Self {
        if e.is_invariant_violation() {
            CliError::Invariant(e.to_string())
        } else {
            CliError::Schema(e.to_string())
        }
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        match e {
            SchemaError::Channel(inner) => inner.into(),
            other => CliError::Schema(other.to_string()),
        }
    }
}

pub struct Ctx {
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Ctx {
    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

pub fn check_unit_open(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(CliError::Schema(format!("{name} must lie in (0, 1), got {v}")))
    }
}

pub fn check_theta(theta: f64) -> Result<f64, CliError> {
    if (0.0..=PI).contains(&theta) {
        Ok(theta)
    } else {
        Err(CliError::Schema(format!("theta must lie in [0, pi], got {theta}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { seed: cli.seed, out: cli.out, format: cli.format };
    let result = match cli.command {
        Command::Distance(a) => distance::run(&ctx, &a),
        Command::TetraSurface(a) => surfaces::run_tetra(&ctx, &a),
        Command::TeleportNoise(a) => surfaces::run_teleport(&ctx, &a),
        Command::Hamiltonian(a) => dynamics::run(&ctx, &a),
        Command::BoundsScatter(a) => scatter::run(&ctx, &a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
