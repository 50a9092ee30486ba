mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "cremona", version, about = "Birational maps of P^3 built from the Cremona involution and the Cremona-cubes group")]
struct Cli {
    /// Output format; CSV applies to plain sequences only.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct MapArg {
    /// Map spec: JSON (`{"cremona":3}`, `{"matrix":[[...]]}`, `{"compose":[...]}`, `{"euler":{...}}`, `{"theta":true}`) or a shortcut name.
    #[arg(long)]
    pub map: String,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate or classify elements of the Cremona-cubes group.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Degree sequence of the iterates of a map.
    Degrees {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = cremona_core::birmap::DEFAULT_DEGREE_CAP)]
        degree_cap: u64,
        /// Compute the degrees from the Picard lattice (maps of the form g∘C3 only).
        #[arg(long)]
        lattice: bool,
    },
    /// Algebraic entropy of a map.
    Entropy {
        #[command(flatten)]
        map: MapArg,
        /// Exact entropy from the pushforward matrix (maps of the form g∘C3 only).
        #[arg(long)]
        exact: bool,
        /// Number of iterates used by the estimate.
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = cremona_core::birmap::DEFAULT_DEGREE_CAP)]
        degree_cap: u64,
    },
    /// Trace the image of a contracted hyperplane.
    Orbit {
        #[command(flatten)]
        map: MapArg,
        /// Plane as a linear form, e.g. `x1` or `x1-x2`.
        #[arg(long)]
        plane: String,
        /// Offset added to the probe-point coordinates.
        #[arg(long, default_value_t = 0)]
        seed_probe: u64,
        #[arg(long, default_value_t = 12)]
        max_steps: usize,
    },
    /// Invariance of a rational function.
    #[command(subcommand)]
    Invariant(InvariantCommand),
    /// Covariance of a linear system.
    #[command(subcommand)]
    Covariance(CovarianceCommand),
    /// Euler-top KHK map: build and verify its structure.
    Euler {
        /// Parameters a1,a2,a3 (perfect-square rationals).
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1,4,9")]
        a: Vec<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        h: String,
        /// Run all verifications.
        #[arg(long, value_enum)]
        verify: Option<Verify>,
    },
    /// Fit a linear recurrence and a generating function to a sequence.
    Fit {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_hyphen_values = true)]
        sequence: Vec<String>,
    },
    /// Run a named verification (or `all`).
    Reproduce { id: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Verify {
    All,
}

#[derive(Subcommand)]
enum GroupCommand {
    Enumerate {
        #[arg(long)]
        count_only: bool,
    },
    Classify {
        /// 4×4 integer matrix as JSON.
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Subcommand)]
enum InvariantCommand {
    Check {
        #[command(flatten)]
        map: MapArg,
        /// Rational function `num/den`.
        #[arg(long, allow_hyphen_values = true)]
        function: String,
        #[arg(long, default_value_t = cremona_core::invariants::DEFAULT_K_MAX)]
        k_max: u32,
    },
}

#[derive(Subcommand)]
enum CovarianceCommand {
    Check {
        #[command(flatten)]
        map: MapArg,
        /// sigmaP, sigmaQ, sigmaB or desmic.
        #[arg(long)]
        system: String,
        /// Multiplicities of the coordinate planes, e.g. `1,1,1,1`.
        #[arg(long, default_value = "1,1,1,1")]
        divisor: String,
    },
}

fn dispatch(cli: Cli) -> Result<commands::Output, CliError> {
    use commands as c;
    match cli.command {
        Command::Group(GroupCommand::Enumerate { count_only }) => c::group_enumerate(count_only),
        Command::Group(GroupCommand::Classify { matrix }) => c::group_classify(&matrix),
        Command::Degrees { map, n, degree_cap, lattice } => c::degrees(&map.map, n, degree_cap, lattice),
        Command::Entropy { map, exact, n, degree_cap } => c::entropy(&map.map, exact, n, degree_cap),
        Command::Orbit { map, plane, seed_probe, max_steps } => c::orbit(&map.map, &plane, seed_probe, max_steps),
        Command::Invariant(InvariantCommand::Check { map, function, k_max }) => c::invariant_check(&map.map, &function, k_max),
        Command::Covariance(CovarianceCommand::Check { map, system, divisor }) => c::covariance_check(&map.map, &system, &divisor),
        Command::Euler { a, h, verify } => c::euler(&a, &h, verify.is_some()),
        Command::Fit { sequence } => c::fit(&sequence),
        Command::Reproduce { id } => c::reproduce(&id),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match dispatch(cli) {
        Ok(out) => {
            println!("{}", out.render(format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
