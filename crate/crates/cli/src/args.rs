use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Bathtub-well spectra, wavefunctions, asymptotic series tables and
/// cross-method verification.
///
/// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
/// failure. `WEBERBOX_THREADS` caps parallelism (0 or unset = all cores).
#[derive(Debug, Parser)]
#[command(name = "weberbox", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the bathtub well over a range of half-widths.
    Spectrum(SpectrumArgs),
    /// One sampled eigenfunction.
    Wavefunction(WavefunctionArgs),
    /// Normalized `w^r e^(-w) S(w)` over a grid of `w`, optionally with sandwich bounds.
    Asymptotics(AsymptoticsArgs),
    /// Radial series growth against its asymptotic law, or piecewise Coulomb levels.
    Hydrogen(HydrogenArgs),
    /// Run every acceptance check and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Destination file (`-` for standard output); defaults to `<command>.<format>`.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

impl OutputArgs {
    pub fn path(&self, stem: &str) -> PathBuf {
        self.output
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{stem}.{}", self.format.extension())))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub l_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub l_max: f64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub l_step: f64,
    /// Highest level index; levels `0..=n_max` are reported.
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub l: f64,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Half-extent of the grid; defaults to a reach where the state is negligible.
    #[arg(long, allow_negative_numbers = true)]
    pub z_max: Option<f64>,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub h: f64,
    /// Scale to unit maximum instead of unit L2 norm.
    #[arg(long)]
    pub max_norm: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AsymptoticsArgs {
    /// Comma-separated exponents `r`.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2", allow_negative_numbers = true)]
    pub r_list: Vec<f64>,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 400.0, allow_negative_numbers = true)]
    pub omega_max: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub omega_step: f64,
    /// Add head, tail and the lower/upper bounds (needs every r > 0).
    #[arg(long)]
    pub sandwich: bool,
    #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.1, allow_negative_numbers = true)]
    pub sigma: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HydrogenArgs {
    /// Angular momentum.
    #[arg(long = "L", default_value_t = 0)]
    pub angular_momentum: u32,
    /// Inverse dimensionless energy (series mode).
    #[arg(long, allow_negative_numbers = true)]
    pub xi: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub rho_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub rho_max: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub rho_step: f64,
    /// Bound levels of the Coulomb tail flattened inside `R` instead of the series table.
    #[arg(long)]
    pub piecewise: bool,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub k: f64,
    #[arg(long = "R", default_value_t = 0.0, allow_negative_numbers = true)]
    pub r_core: f64,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    /// Radial Numerov step.
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub h: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Coarser sweeps and fewer oracle cases.
    #[arg(long)]
    pub quick: bool,
    /// JSON report.
    #[arg(long, short, default_value = "verify.json")]
    pub output: PathBuf,
    /// Series-vs-Numerov eigenvalue table.
    #[arg(long, default_value = "verify_comparison.csv")]
    pub comparison: PathBuf,
}
