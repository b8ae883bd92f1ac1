mod cache;
mod commands;
mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use photoion_core::units::ALPHA_FS;

#[derive(Parser, Debug)]
#[command(
    name = "photoion",
    version,
    about = "Asymptotic photoionization cross sections from radial Fourier transforms of central potentials"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Particle mass in natural units
    #[arg(long = "m", global = true, default_value_t = 1.0)]
    pub m: f64,
    /// Photon coupling in the cross-section prefactor
    #[arg(long, global = true, default_value_t = ALPHA_FS)]
    pub alpha: f64,
    /// Write the result here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Reuse bound-state solutions stored in this directory
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Accept photon energies below the asymptotic threshold without warning
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PotentialArgs {
    /// Catalog kind, e.g. coulomb, yukawa, dirac-bubble
    #[arg(long, value_name = "KIND")]
    pub potential: Option<String>,
    /// Potential parameter, repeatable
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
    /// JSON document {"kind": ..., "params": {...}}
    #[arg(long, value_name = "JSON")]
    pub potential_file: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Natural,
    Physical,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Power,
    Exp,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Ft,
    Bound,
    Xsec,
    Tails,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show the potential catalog
    List(ListArgs),
    /// Tabulate V(p) in closed form and by quadrature
    Ft(FtArgs),
    /// Solve for the ground s-state
    Bound(BoundArgs),
    /// Sweep the cross section over photon energy
    Sigma(SigmaArgs),
    /// Cross-section ratio between two photon energies
    Ratio(RatioArgs),
    /// Fit the large-energy tail
    FitTail(FitArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct ListArgs {
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct FtArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long, default_value_t = 0.1)]
    pub p_min: f64,
    #[arg(long, default_value_t = 50.0)]
    pub p_max: f64,
    #[arg(long, default_value_t = 40)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Extra split point for the quadrature
    #[arg(long)]
    pub r_break: Option<f64>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SolverArgs {
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub n_grid: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub e_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub e_hi: Option<f64>,
    #[arg(long)]
    pub tol_energy: Option<f64>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Explicit photon energies, comma separated; overrides the grid
    #[arg(long, value_delimiter = ',')]
    pub omega: Vec<f64>,
    /// Defaults to 100 I
    #[arg(long)]
    pub omega_min: Option<f64>,
    /// Defaults to 10^4 I
    #[arg(long)]
    pub omega_max: Option<f64>,
    #[arg(long, default_value_t = 24)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
    /// Use this ψ(0)² instead of solving for the bound state
    #[arg(long)]
    pub psi0sq: Option<f64>,
    /// Multiply by the Coulomb final-state factor exp(-π m g / p)
    #[arg(long)]
    pub stobbe: bool,
    #[arg(long, default_value_t = 1)]
    pub k_electrons: u32,
    #[arg(long, value_enum, default_value_t = Units::Natural)]
    pub units: Units,
    /// Mass unit in electron masses, for --units physical
    #[arg(long, default_value_t = 1.0)]
    pub unit_mass: f64,
}

#[derive(Args, Debug)]
pub struct RatioArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long)]
    pub omega1: f64,
    #[arg(long)]
    pub omega2: f64,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Fit a table written by `sigma` instead of running the pipeline
    #[arg(long, value_name = "CSV")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub law: Option<Law>,
    /// Window start (in units of I for the pipeline)
    #[arg(long)]
    pub window_lo: Option<f64>,
    #[arg(long)]
    pub window_hi: Option<f64>,
    #[arg(long, default_value_t = 24)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const USAGE: u8 = 1;
    pub const NUMERIC: u8 = 2;
    pub const VERIFICATION: u8 = 3;

    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: Self::USAGE,
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Failure {
            code: Self::NUMERIC,
            message: message.into(),
        }
    }
}

impl From<photoion_core::Error> for Failure {
    fn from(e: photoion_core::Error) -> Self {
        match e {
            photoion_core::Error::InvalidParameter { .. } => Failure::usage(e.to_string()),
            _ => Failure::numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::numeric(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Failure::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let g = &cli.global;
    let result = match &cli.command {
        Command::List(a) => commands::list(g, a),
        Command::Ft(a) => commands::ft(g, a),
        Command::Bound(a) => commands::bound(g, a),
        Command::Sigma(a) => commands::sigma(g, a),
        Command::Ratio(a) => commands::ratio(g, a),
        Command::FitTail(a) => commands::fit_tail(g, a),
        Command::Verify(a) => verify::run(g, a.suite),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
