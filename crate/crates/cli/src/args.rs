use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fhaim_core::BigRat;

use crate::rational::parse_rational;

#[derive(Parser, Debug)]
#[command(
    name = "fhaim",
    version,
    about = "Spectra and eigenfunctions of the harmonic oscillator with mass m0/(1+λt²)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Energy levels from the closed form, the asymptotic iteration method,
    /// or the finite-difference oracle.
    Spectrum(SpectrumArgs),
    /// Cross-check the three methods against each other.
    Verify(VerifyArgs),
    /// Sample a normalized eigenfunction on a uniform τ grid.
    Wavefunction(WavefunctionArgs),
    /// Write the data behind the four energy figures as CSV.
    Figures(FiguresArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Angular frequency ω (default 1).
    #[arg(long, value_parser = parse_rational)]
    pub omega: Option<BigRat>,
    /// Mass parameter λ (default 0).
    #[arg(long, value_parser = parse_rational, conflicts_with = "lambda_tilde")]
    pub lambda: Option<BigRat>,
    /// Dimensionless λ̃ = λ/ω.
    #[arg(long = "lambda-tilde", value_parser = parse_rational)]
    pub lambda_tilde: Option<BigRat>,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// Iteration depth of the asymptotic iteration method
    /// (default max(8, n_max + 3)).
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Anchor point for the quantization condition.
    #[arg(long, value_parser = parse_rational, default_value = "0")]
    pub tau0: BigRat,
    /// Drift tolerance for irrational quantization roots.
    #[arg(long = "stab-tol", value_parser = parse_rational, default_value = "1/10000000000")]
    pub stab_tol: BigRat,
    /// Use the literal sign of the first-derivative coefficient as printed
    /// in the reduced equation, for comparison.
    #[arg(long = "printed-signs")]
    pub printed_signs: bool,
    /// Half-width T of the finite-difference time domain.
    #[arg(long = "grid-T")]
    pub grid_t: Option<f64>,
    /// Number of interior finite-difference nodes.
    #[arg(long = "grid-N")]
    pub grid_n: Option<usize>,
    /// Bisection width for oracle eigenvalues.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Aim,
    Oracle,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long = "n-max", default_value_t = 3)]
    pub n_max: u32,
    /// Repeatable; defaults to `closed`.
    #[arg(long, value_enum)]
    pub method: Vec<MethodArg>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long = "n-max", default_value_t = 5)]
    pub n_max: u32,
    /// Highest level compared against the oracle.
    #[arg(long = "oracle-n-max", default_value_t = 3)]
    pub oracle_n_max: u32,
    /// Largest accepted |E_oracle − E| at ω = 1.
    #[arg(long = "oracle-tol", default_value_t = 1e-3)]
    pub oracle_tol: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output format; the report is JSON unless `table` is requested.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long = "tau-min", default_value_t = -5.0, allow_hyphen_values = true)]
    pub tau_min: f64,
    #[arg(long = "tau-max", default_value_t = 5.0, allow_hyphen_values = true)]
    pub tau_max: f64,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FiguresArgs {
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Frequency for the level-versus-λ sweep.
    #[arg(long = "fig1-omega", value_parser = parse_rational, default_value = "10")]
    pub fig1_omega: BigRat,
    #[arg(long = "lambda-min", value_parser = parse_rational, default_value = "0")]
    pub lambda_min: BigRat,
    #[arg(long = "lambda-max", value_parser = parse_rational, default_value = "2")]
    pub lambda_max: BigRat,
    #[arg(long = "lambda-points", default_value_t = 81)]
    pub lambda_points: usize,
    /// Frequencies for the first-excited-level sweep.
    #[arg(long = "fig2-omegas", value_parser = parse_rational, value_delimiter = ',', default_value = "10,12,14")]
    pub fig2_omegas: Vec<BigRat>,
    #[arg(long = "fig3-omegas", value_parser = parse_rational, value_delimiter = ',', default_value = "10,20,30")]
    pub fig3_omegas: Vec<BigRat>,
    #[arg(long = "fig3-lambda", value_parser = parse_rational, default_value = "1")]
    pub fig3_lambda: BigRat,
    #[arg(long = "fig3-n-max", default_value_t = 9)]
    pub fig3_n_max: u32,
    #[arg(long = "fig4-lambda", value_parser = parse_rational, default_value = "1/10")]
    pub fig4_lambda: BigRat,
    #[arg(long = "fig4-omega-max", default_value_t = 30)]
    pub fig4_omega_max: u32,
}
