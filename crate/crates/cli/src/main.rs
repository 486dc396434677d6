//! `vekua`: solve, check and verify Dirichlet problems from JSON problem files.

mod commands;
mod error;
mod output;
mod problem;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{Outcome, Settings};
use crate::error::Failure;
use crate::problem::Builtin;
use crate::render::Channel;

#[derive(Parser, Debug)]
#[command(name = "vekua", version, about = "Polyanalytic, iterated Vekua and bicomplex Dirichlet problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output directory for report.json and CSV files.
    #[arg(long, default_value = "vekua-out")]
    out: PathBuf,
    /// Side length of the CSV sampling grid.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    /// Boundary quadrature nodes (power of two, at least 64).
    #[arg(long, default_value_t = 1024)]
    nodes: usize,
    /// Tolerance for solvability conditions, or for residuals under `verify`.
    #[arg(long)]
    tol: Option<f64>,
    /// Recorded in the report; all algorithms are deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a problem and write solution.csv and report.json.
    Solve {
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate solvability only and write report.json.
    Check {
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Emit witness fields of a homogeneous problem with zero boundary data.
    Witness {
        /// Optional witness problem file; flags override its values.
        problem: Option<PathBuf>,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        count: Option<u32>,
        #[arg(long, value_enum)]
        coeff: Option<CoeffArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Render one channel of a solution CSV as a binary PGM image.
    Render {
        csv: PathBuf,
        #[arg(long, default_value = "field.pgm")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Channel::Re)]
        channel: Channel,
    },
    /// Check the residual of a field (or of a computed solution) against the equation.
    Verify {
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CoeffArg {
    Zero,
    Z,
    ZOver2,
}

impl From<CoeffArg> for Builtin {
    fn from(c: CoeffArg) -> Self {
        match c {
            CoeffArg::Zero => Builtin::Zero,
            CoeffArg::Z => Builtin::Z,
            CoeffArg::ZOver2 => Builtin::ZOver2,
        }
    }
}

impl From<Common> for Settings {
    fn from(c: Common) -> Self {
        Settings { out: c.out, grid: c.grid, nodes: c.nodes, tol: c.tol, seed: c.seed }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("VEKUA_THREADS") else { return Ok(()) };
    let n: usize =
        v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Failure::new("environment", format!("VEKUA_THREADS must be a positive integer, got `{v}`"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::new("environment", e.to_string()))
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Solve { problem, common } => commands::solve(&problem, &common.into()),
        Command::Check { problem, common } => commands::check(&problem, &common.into()),
        Command::Verify { problem, common } => commands::verify(&problem, &common.into()),
        Command::Witness { problem, order, count, coeff, common } => {
            commands::witness(problem.as_deref(), order, count, coeff.map(Builtin::from), &common.into())
        }
        Command::Render { csv, out, channel } => commands::render(&csv, &out, channel),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            eprintln!("{}", Failure::new("usage", first));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::NotSolvable) => ExitCode::from(2),
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(1)
        }
    }
}
