use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qwalk2c",
    version,
    about = "Two-coin quantum walk: simulation, limit laws and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve the walk and write p_t(x) with the four component magnitudes.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        /// Number of steps.
        #[arg(long, default_value_t = 100)]
        t: usize,
    },
    /// Weak-limit density and CDF of X_t / t on a grid over [-1, 1].
    Density {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        /// Grid points; points landing exactly on ±cos(beta) are skipped.
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Stationary law p(x) = lim p_t(x) over a window of positions.
    Stationary {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = -10, allow_negative_numbers = true)]
        x_from: i64,
        #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
        x_to: i64,
    },
    /// Run the consistency checks; exits 1 if any gating check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Random (beta, alpha) draws on top of the pinned cases.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Steps for the simulation checkpoints; 0 skips them.
        #[arg(long, default_value_t = 1000)]
        t: usize,
    },
    /// Closed-form summaries over a grid of beta values and state presets.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "0.1")]
        beta_min: String,
        #[arg(long, default_value = "1.4707963267948966")]
        beta_max: String,
        #[arg(long, default_value_t = 16)]
        beta_steps: usize,
        /// Comma-separated presets.
        #[arg(long, default_value = "bell,nonloc", value_delimiter = ',')]
        presets: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Absolute tolerance for the adaptive quadrature.
    #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
    pub tol: f64,
    /// Worker threads for parallel commands; 0 uses every hardware thread.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Coin angle in radians, or a multiple of pi such as pi/4.
    #[arg(long, default_value = "pi/4", allow_hyphen_values = true)]
    pub beta: String,
    /// Initial coin state as four complex literals, e.g. "0.5,0.5i,-0.5,0.5".
    #[arg(long, conflicts_with = "preset", allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Named initial state: bell or nonloc.
    #[arg(long)]
    pub preset: Option<String>,
    /// Rescale alpha to unit norm instead of rejecting it.
    #[arg(long)]
    pub renormalize: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}
