use std::path::PathBuf;

use ballspec::{BoundaryCondition, Order};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ballspec", version, about = "Spectra, Courant-sharp eigenvalues and Pleijel constants of the unit ball")]
pub struct Cli {
    /// Print the program version to stderr before running.
    #[arg(long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Labeled Dirichlet or Neumann eigenvalues up to a cutoff.
    Spectrum(SpectrumArgs),
    /// Zeros of J_nu, of Xi_l (Dirichlet) or of Xi_l' (Neumann).
    Zeros(ZerosArgs),
    /// Courant-sharpness verdicts with their certificates.
    Courant(CourantArgs),
    /// Pleijel constants gamma(d), their quotients and the Neumann bound.
    Pleijel(PleijelArgs),
    /// Check the monotonicity proof of gamma(d) over a range of dimensions.
    Certify(CertifyArgs),
    /// Run the built-in invariant suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bc {
    Dirichlet,
    Neumann,
}

impl From<Bc> for BoundaryCondition {
    fn from(b: Bc) -> Self {
        match b {
            Bc::Dirichlet => BoundaryCondition::Dirichlet,
            Bc::Neumann => BoundaryCondition::Neumann,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JsonOrTable {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Bessel,
    Dirichlet,
    Neumann,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the result to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub d: u32,
    #[arg(long, value_enum)]
    pub bc: Bc,
    /// Inclusive eigenvalue cutoff.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_max: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Bessel order, e.g. 3, 3.5 or 7/2 (bessel only).
    #[arg(long)]
    pub nu: Option<Order>,
    /// Angular degree (dirichlet and neumann).
    #[arg(long)]
    pub l: Option<u32>,
    /// Dimension (dirichlet and neumann).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub d: Option<u32>,
    /// Number of zeros, starting from the first.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub count: u32,
    /// Relative tolerance.
    #[arg(long, default_value_t = ballspec::zeros::DEFAULT_TOL, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct CourantArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub d: u32,
    #[arg(long, value_enum)]
    pub bc: Bc,
    #[arg(long, default_value_t = ballspec::courant::DEFAULT_LMAX)]
    pub lmax: u32,
    #[arg(long, default_value_t = ballspec::courant::DEFAULT_MMAX, value_parser = clap::value_parser!(u32).range(1..))]
    pub mmax: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub format: JsonOrTable,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("what").required(true).args(["table", "quotient", "bound"])))]
pub struct PleijelArgs {
    /// gamma(d) for d in [D_MIN, D_MAX].
    #[arg(long, num_args = 2, value_names = ["D_MIN", "D_MAX"])]
    pub table: Option<Vec<u32>>,
    /// gamma(d+1)/gamma(d) for d in [D_MIN, D_MAX].
    #[arg(long, num_args = 2, value_names = ["D_MIN", "D_MAX"])]
    pub quotient: Option<Vec<u32>>,
    /// Neumann Pleijel bound gamma(d-1) in dimension D.
    #[arg(long, value_name = "D")]
    pub bound: Option<u32>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, default_value_t = 4)]
    pub d_min: u32,
    #[arg(long, default_value_t = 150)]
    pub d_max: u32,
    #[arg(long, value_enum, default_value = "table")]
    pub format: JsonOrTable,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    /// Smaller grids; finishes in a few seconds.
    #[arg(long)]
    pub fast: bool,
}
