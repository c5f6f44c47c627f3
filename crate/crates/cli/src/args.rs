use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nonclass", version, about = "Single-mode nonclassicality from beam-splitter entanglement")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Evaluate grids on one thread even when built with rayon.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report E_N and the criteria for given second moments (JSON).
    Measure(MeasureArgs),
    /// E_N versus squeezing strength (CSV).
    SqueezedSweep(SqueezedSweepArgs),
    /// Ground-state field nonclassicality across the superradiant threshold (CSV).
    DickeSweep(DickeSweepArgs),
    /// Compare the closed-form covariance with a Fock-space computation.
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fixed,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThetaMode {
    Fixed,
    Optimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverMethod {
    Auto,
    Lanczos,
    Dense,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GridArgs {
    /// Transmission grid points on [0, 1] (1/sqrt2 is always added).
    #[arg(long, default_value_t = 33)]
    pub t_points: usize,
    /// Splitter phase grid points on [0, 2pi).
    #[arg(long, default_value_t = 64)]
    pub phi_points: usize,
    /// Squeezing-angle grid points on [0, 2pi).
    #[arg(long, default_value_t = 64)]
    pub theta_points: usize,
    /// Compass-search iterations after the grid.
    #[arg(long, default_value_t = 40)]
    pub refine_iters: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    /// <a^dagger a>
    #[arg(long, allow_negative_numbers = true)]
    pub n: f64,
    /// |<a^2>|
    #[arg(long, allow_negative_numbers = true)]
    pub v: f64,
    /// arg <a^2> in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, value_enum, default_value_t = Mode::Maximize)]
    pub mode: Mode,
    /// Transmission for --mode fixed.
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
    pub t: f64,
    /// Splitter phase for --mode fixed, radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    /// Re <a>; with a nonzero mean, n and v are the raw (uncentered) moments.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mean_re: f64,
    /// Im <a>.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mean_im: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SqueezedSweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = 2.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 41)]
    pub steps: usize,
    /// Squeezing angle of the fixed-angle column, radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Which run supplies the best_t / best_phi columns.
    #[arg(long, value_enum, default_value_t = ThetaMode::Fixed)]
    pub theta_mode: ThetaMode,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_im: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DickeSweepArgs {
    #[arg(long, default_value_t = 80)]
    pub n_atoms: usize,
    #[arg(long, default_value_t = 142)]
    pub fock_dim: usize,
    #[arg(long, default_value_t = 0.0)]
    pub g_min: f64,
    /// Defaults to 2 g_c.
    #[arg(long)]
    pub g_max: Option<f64>,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega_eg: f64,
    /// Add the (S+ a^dagger + S- a) terms.
    #[arg(long)]
    pub counter_rotating: bool,
    /// Eigensolver residual tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Operator applications allowed per eigenpair.
    #[arg(long, default_value_t = 50_000)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = SolverMethod::Auto)]
    pub method: SolverMethod,
    /// Use (v0 + v1)/sqrt2 when the ground level is degenerate.
    #[arg(long)]
    pub mix_degenerate: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleCheckArgs {
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Fock truncation of the input mode.
    #[arg(long, default_value_t = 80)]
    pub dim: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Squeezing strengths are drawn from [0, r_max].
    #[arg(long, default_value_t = 1.5)]
    pub r_max: f64,
    /// Displacements are drawn with |alpha| in [0, alpha_max].
    #[arg(long, default_value_t = 1.0)]
    pub alpha_max: f64,
    /// Negative control: conjugate the splitter phase in the Fock computation.
    #[arg(long, hide = true)]
    pub corrupt_phase: bool,
}
