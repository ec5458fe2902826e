use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "liouville", version, about = "Liouville properties of Pucci extremal inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one parameter instance and print the verdict as JSON.
    Classify(ClassifyArgs),
    /// Classify a (q, gamma) lattice and write one CSV row per point.
    Sweep(SweepArgs),
    /// Synthesize an explicit counterexample.
    Counterexample(CounterexampleArgs),
    /// Check the residual of a problem file on a radial grid.
    Verify(VerifyArgs),
    /// Check monotonicity of r^e m(r) and, optionally, the decay bound.
    Monotonic(MonotonicArgs),
    /// Scan whether -log r is a Lyapunov function for a drift.
    Lyapunov(LyapunovArgs),
    /// Transformations and the algebraic inequalities behind them.
    #[command(subcommand)]
    Transform(TransformCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    Plus,
    Minus,
    Generic,
    Plap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HamKind {
    H1,
    H2,
    H3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DriftKind {
    Zero,
    Scaled,
    Limsup,
}

#[derive(Debug, Clone, Args)]
pub struct EllArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long = "Lambda")]
    pub big_lambda: f64,
}

/// Drift selection; `--drift` may be omitted when one of the values is given.
#[derive(Debug, Clone, Args)]
pub struct DriftArgs {
    #[arg(long, value_enum)]
    pub drift: Option<DriftKind>,
    /// Coefficient c of b·x = c r^2/(1+r^2).
    #[arg(long)]
    pub drift_scaled_c: Option<f64>,
    /// Prescribed limsup of b·x at infinity.
    #[arg(long)]
    pub drift_limsup: Option<f64>,
}

/// Everything an instance needs except the two sweep coordinates.
#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long = "Lambda")]
    pub big_lambda: Option<f64>,
    /// Exponent of the normalized p-Laplacian (with `--operator plap`).
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum)]
    pub operator: OperatorKind,
    #[arg(long, value_enum)]
    pub ham: HamKind,
    /// Coefficient A of the gradient term in h3.
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[command(flatten)]
    pub drift: DriftArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Inclusive range `a:b:n` of n equally spaced values.
    #[arg(long)]
    pub q_range: String,
    #[arg(long)]
    pub gamma_range: String,
    /// Re-check every witness against the instance and fail on a negative residual.
    #[arg(long)]
    pub verify_witnesses: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    H1,
    H2,
    /// Singular solution of the H2 inequality with q = 0.
    H2Singular,
    Drift,
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    #[arg(long, value_enum)]
    pub ham: WitnessKind,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Exponent of the drift witness.
    #[arg(long)]
    pub delta: Option<f64>,
    #[command(flatten)]
    pub ell: EllArgs,
    /// Include the full residual arrays.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub problem: PathBuf,
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1e-2)]
    pub r_min: f64,
    #[arg(long, default_value_t = 1e6)]
    pub r_max: f64,
    #[arg(long, default_value_t = 512)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MonotonicArgs {
    /// Radial profile as JSON.
    #[arg(long)]
    pub profile: String,
    /// Weight exponent; defaults to beta - 2 when N, lambda, Lambda are given.
    #[arg(long)]
    pub exponent: Option<f64>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long = "Lambda")]
    pub big_lambda: Option<f64>,
    /// Also check sup r^(2/(q-1)) m(r) < infinity.
    #[arg(long)]
    pub q: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub ell: EllArgs,
    #[command(flatten)]
    pub drift: DriftArgs,
    #[arg(long, default_value_t = 1e6)]
    pub r_max: f64,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
}

#[derive(Debug, Subcommand)]
pub enum TransformCommand {
    /// v = lambda (1 - exp(-u/lambda)) and back.
    HopfCole {
        #[arg(long)]
        u: f64,
        #[arg(long)]
        lambda: f64,
    },
    /// Residual of the transformed inequality for a profile and a drift.
    Chain {
        #[arg(long)]
        profile: String,
        #[command(flatten)]
        ell: EllArgs,
        #[command(flatten)]
        drift: DriftArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Exponents (b, s, z) of the substitution u = v^b.
    Power {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        b: f64,
    },
    /// Search for a substitution moving (q, gamma) into the transfer range.
    Transfer {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        gamma: f64,
        #[command(flatten)]
        ell: EllArgs,
    },
    /// v = int_0^u exp(-s^(q+1)/((q+1) lambda)) ds.
    Mixquad {
        #[arg(long)]
        u: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        lambda: f64,
    },
    /// (|v|^(q-1)v - |u|^(q-1)u)(v-u) >= 2^(1-q)|v-u|^(q+1).
    Lcp {
        #[arg(long)]
        u: f64,
        #[arg(long)]
        v: f64,
        #[arg(long)]
        q: f64,
    },
}
