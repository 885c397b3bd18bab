use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "roundcone",
    version,
    about = "Orthogonal projections of round cones onto subspaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the projection of a cone onto a subspace
    Classify(InstanceArgs),
    /// Classify the projection of the apex-open version of a cone
    ProjectOpen(InstanceArgs),
    /// Projected half-aperture from --phi and --psi
    Aperture(ApertureArgs),
    /// Widest half-aperture with a given projected half-aperture
    InverseAperture(InverseArgs),
    /// Construct an extremal vector for an instance
    Witness(WitnessArgs),
    /// Check a classification against sampled cone points
    Verify(VerifyArgs),
    /// Widest cone around the diagonal that fits in an orthant, n = 2..=N
    Orthant(OrthantArgs),
    /// Discretized L2(0,1) threshold experiment
    L2Demo(L2Args),
    /// Evaluate a reverse Cauchy-Schwarz statement on a vector
    CbsCheck(CbsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlavorArg {
    Closed,
    ApexOpen,
}

/// Either `--input` or the inline flags describe the instance.
#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// JSON instance file
    #[arg(long, conflicts_with_all = ["dim", "axis", "apex", "phi", "subspace", "offset", "flavor"])]
    pub input: Option<PathBuf>,
    /// Ambient dimension; inferred from --axis when omitted
    #[arg(long)]
    pub dim: Option<usize>,
    /// Cone axis, comma separated
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
    /// Cone apex, comma separated; defaults to the origin
    #[arg(long, allow_hyphen_values = true)]
    pub apex: Option<String>,
    /// Half-aperture
    #[arg(long)]
    pub phi: Option<f64>,
    /// coords:i,j,..., zero, full, or span:x,y,..;x,y,..
    #[arg(long)]
    pub subspace: Option<String>,
    /// Offset of an affine target, orthogonal to the subspace
    #[arg(long, allow_hyphen_values = true)]
    pub offset: Option<String>,
    #[arg(long, value_enum)]
    pub flavor: Option<FlavorArg>,
    /// Boundary band for phi = psi decisions
    #[arg(long)]
    pub angle_tol: Option<f64>,
    /// Read --phi (and other angle flags) in degrees
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ApertureArgs {
    #[arg(long)]
    pub phi: f64,
    #[arg(long)]
    pub psi: f64,
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct InverseArgs {
    #[arg(long)]
    pub phi1: f64,
    #[arg(long)]
    pub psi: f64,
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Equality,
    Antipodal,
    Border,
}

#[derive(Args, Debug, Clone)]
pub struct WitnessArgs {
    #[arg(long, value_enum)]
    pub kind: WitnessKind,
    /// Target cosine for --kind border
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[command(flatten)]
    pub instance: InstanceArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Boundary,
    Filled,
}

#[derive(Args, Debug, Clone)]
pub struct SamplingArgs {
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sampling: SamplingArgs,
    /// Defaults to boundary for phi <= pi/2, filled otherwise
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Membership tolerance for projected samples
    #[arg(long, default_value_t = roundcone::oracle::VERIFY_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub instance: InstanceArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OrthantArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct L2Args {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Cutoff for the counterexample; defaults to the grid point below the threshold
    #[arg(long)]
    pub t: Option<f64>,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbsKind {
    Implication,
    Sign,
    Enhanced,
}

#[derive(Args, Debug, Clone)]
pub struct CbsArgs {
    #[arg(long, value_enum)]
    pub check: CbsKind,
    /// The vector u (for --check enhanced, the component u1 in the subspace)
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    /// For --check enhanced; defaults to cos(phi)
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub instance: InstanceArgs,
}

pub fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("bad number {s:?} in {text:?}")))
        })
        .collect()
}

pub fn angle(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}
