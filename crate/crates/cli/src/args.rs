use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "potts3pt",
    version,
    about = "Three-point connectivity of critical Potts spin clusters: exact constants, conformal-radius laws and Monte Carlo checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// kappa, C(q) and ImDOZZ on the reference q grid, with diffs against the published values.
    Table1,
    /// (C(q)/sqrt(q)) * ImDOZZ against published simulation estimates.
    Table2,
    /// Imaginary DOZZ constant at given charges (default: the diagonal charge of the model).
    Dozz(DozzArgs),
    /// kappa, C(q), ImDOZZ and the three-point constant R(q).
    Constant(ModelArg),
    /// Conformal-radius moment laws at one lambda.
    Moments(MomentsArgs),
    /// Negative finiteness threshold of the blue-to-red moment.
    Lambda0(ModelArg),
    /// Expected log conformal radii.
    Logs(ModelArg),
    /// C(kappa) by both routes.
    Ckappa(ModelArg),
    /// Monte Carlo estimate of the three-point ratio.
    Simulate(SimulateArgs),
    /// Run every deterministic identity check.
    Verify,
}

/// The model is given by exactly one of `--q` or `--kappa`.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ModelArg {
    /// Cluster weight q in [1, 4].
    #[arg(long)]
    pub q: Option<f64>,
    /// SLE parameter kappa in [8/3, 4].
    #[arg(long)]
    pub kappa: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DozzArgs {
    #[command(flatten)]
    pub model: ModelArg,
    /// Three charges, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alphas: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub model: ModelArg,
    /// Moment order.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Also evaluate the boundary-touching laws at this force point.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Periodic,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerArg {
    Cm,
    Sw,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// Lattice side length.
    #[arg(long = "L", default_value_t = 128)]
    pub l: usize,
    /// Side of the triangle of marked points.
    #[arg(long, default_value_t = 16)]
    pub side: usize,
    /// Measurement sweeps per chain.
    #[arg(long, default_value_t = 200_000)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 2_000)]
    pub thermalization: usize,
    #[arg(long, default_value_t = 20)]
    pub batches: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "periodic")]
    pub boundary: BoundaryArg,
    #[arg(long, value_enum, default_value = "cm")]
    pub sampler: SamplerArg,
    /// Independent chains (RNG streams 0..chains), run in parallel.
    #[arg(long, default_value_t = 1)]
    pub chains: usize,
    /// Bond probability; defaults to the critical point.
    #[arg(long)]
    pub p: Option<f64>,
    /// Red probability; defaults to 1/q.
    #[arg(long)]
    pub r: Option<f64>,
    /// Write per-batch indicator means to this CSV file.
    #[arg(long, value_name = "PATH")]
    pub dump_batches: Option<PathBuf>,
}
