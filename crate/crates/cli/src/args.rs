use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use p1lab_core::bounds::BoundMethod;
use p1lab_core::fem::ProblemPreset;
use p1lab_core::function::Preset;
use p1lab_core::quadrature::QuadratureSpec;

#[derive(Debug, Parser)]
#[command(
    name = "p1lab",
    version,
    about = "P1 interpolation error bounds: constants, sweeps and FEM checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact interpolation constants for each method
    Constants(ConstantsArgs),
    /// Taylor and Taylor-like remainders against their bounds, cell by cell
    Expansion(ExpansionArgs),
    /// Measured interpolation errors against the a priori bounds
    Interp(InterpArgs),
    /// Finite-n constants approaching the asymptotic one
    Asymptotic(AsymptoticArgs),
    /// Solve -u'' + u = f and check the Cea chain
    Fem(FemArgs),
    /// Mesh savings of the asymptotic Taylor-like bound over Taylor
    Savings(SavingsArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants(_) => "constants",
            Command::Expansion(_) => "expansion",
            Command::Interp(_) => "interp",
            Command::Asymptotic(_) => "asymptotic",
            Command::Fem(_) => "fem",
            Command::Savings(_) => "savings",
        }
    }

    pub fn output(&self) -> &Output {
        match self {
            Command::Constants(a) => &a.output,
            Command::Expansion(a) => &a.output,
            Command::Interp(a) => &a.output,
            Command::Asymptotic(a) => &a.output,
            Command::Fem(a) => &a.output,
            Command::Savings(a) => &a.output,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeshKind {
    Uniform,
    Perturbed,
    Both,
}

impl MeshKind {
    pub fn kinds(self) -> &'static [&'static str] {
        match self {
            MeshKind::Uniform => &["uniform"],
            MeshKind::Perturbed => &["perturbed"],
            MeshKind::Both => &["uniform", "perturbed"],
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file supplying defaults; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Quadrature {
    /// Gauss-Legendre points per panel
    #[arg(long, default_value_t = 8)]
    pub qpoints: usize,
    /// Quadrature panels per mesh cell
    #[arg(long, default_value_t = 16)]
    pub qpanels: usize,
}

impl Quadrature {
    pub fn spec(&self) -> p1lab_core::Result<QuadratureSpec> {
        QuadratureSpec::new(self.qpoints, self.qpanels)
    }
}

#[derive(Debug, Clone, Args)]
pub struct MeshArgs {
    #[arg(long, value_enum, default_value_t = MeshKind::Both)]
    pub mesh: MeshKind,
    /// Node perturbation as a fraction of the uniform width
    #[arg(long, default_value_t = 0.3)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

fn parse_method(s: &str) -> Result<BoundMethod, String> {
    s.parse().map_err(|e: p1lab_core::Error| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct ConstantsArgs {
    #[arg(long, num_args = 1.., default_values_t = [2, 5])]
    pub p: Vec<u32>,
    /// Trapezoid panel counts for the finite Taylor-like constants
    #[arg(long, num_args = 1.., default_values_t = [1, 2, 4, 8])]
    pub n: Vec<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct ExpansionArgs {
    /// Function presets (default: all)
    #[arg(long, num_args = 1..)]
    pub function: Vec<Preset>,
    #[arg(long, default_value_t = 16)]
    pub cells: usize,
    #[arg(long, num_args = 1.., default_values_t = [1, 2, 3, 4, 5, 6, 7, 8])]
    pub n: Vec<usize>,
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct InterpArgs {
    /// Function presets (default: all)
    #[arg(long, num_args = 1..)]
    pub function: Vec<Preset>,
    #[arg(long, num_args = 1.., default_values_t = [4, 8, 16, 32, 64, 128])]
    pub cells: Vec<usize>,
    #[arg(long, num_args = 1.., default_values_t = [2, 3, 5])]
    pub p: Vec<u32>,
    /// taylor, mean_value, taylor_like(n) or taylor_like_asymptotic (default: all, n in 1 2 4 8)
    #[arg(long, num_args = 1.., value_parser = parse_method)]
    pub method: Vec<BoundMethod>,
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub quad: Quadrature,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct AsymptoticArgs {
    #[arg(long, num_args = 1.., default_values_t = [2, 3, 5, 8])]
    pub p: Vec<u32>,
    #[arg(long, num_args = 1.., default_values_t = [1, 10, 100, 1000, 10000, 100000])]
    pub n: Vec<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct FemArgs {
    #[arg(long, num_args = 1.., default_values_t = [ProblemPreset::SinPi])]
    pub problem: Vec<ProblemPreset>,
    #[arg(long, num_args = 1.., default_values_t = [8, 16, 32, 64, 128])]
    pub cells: Vec<usize>,
    #[arg(long, num_args = 1.., default_values_t = [2])]
    pub p: Vec<u32>,
    #[arg(long, num_args = 1.., value_parser = parse_method, default_value = "taylor")]
    pub method: Vec<BoundMethod>,
    /// Cea constant C >= 1
    #[arg(long, default_value_t = 1.0)]
    pub cea: f64,
    #[arg(long, value_enum, default_value_t = MeshKind::Uniform)]
    pub mesh: MeshKind,
    #[arg(long, default_value_t = 0.3)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub quad: Quadrature,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SavingsArgs {
    #[arg(long, num_args = 1.., default_values_t = [2, 5])]
    pub p: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    pub dim: u32,
    /// Target W^{1,p} error for the mesh search
    #[arg(long, default_value_t = 0.01)]
    pub target: f64,
    #[arg(long, default_value_t = ProblemPreset::SinPi)]
    pub problem: ProblemPreset,
    #[arg(long, default_value_t = 1.0)]
    pub cea: f64,
    #[command(flatten)]
    pub quad: Quadrature,
    #[command(flatten)]
    pub output: Output,
}
