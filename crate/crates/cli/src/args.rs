use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tscale",
    version,
    about = "Dynamic calculus and integral inequalities on time scales"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Delta,
    Nabla,
    Diamond,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 1e-10)]
    pub quad_abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub quad_rel_tol: f64,
    #[arg(long, default_value_t = 4)]
    pub fd_levels: u32,
    #[arg(long, value_enum, default_value_t = OutputMode::Human)]
    pub out: OutputMode,
}

#[derive(Debug, Clone, Args)]
pub struct Window {
    /// Time-scale file (JSON with a `components` list).
    #[arg(long)]
    pub scale: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diamond-alpha integral of f over [a, b].
    Integrate {
        #[command(flatten)]
        window: Window,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        common: Common,
    },
    /// Delta, nabla or diamond-alpha derivative of f at t.
    Derive {
        #[arg(long)]
        scale: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, value_enum, default_value_t = Kind::Diamond)]
        kind: Kind,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Hölder inequality for f, g with exponent p.
    CheckHolder {
        #[command(flatten)]
        window: Window,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Cauchy–Schwarz inequality for f, g.
    CheckCs {
        #[command(flatten)]
        window: Window,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        common: Common,
    },
    /// Minkowski inequality for f, g with exponent p.
    CheckMinkowski {
        #[command(flatten)]
        window: Window,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Jensen inequality for g and a convex F on (c, d).
    CheckJensen {
        #[command(flatten)]
        window: Window,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Convex function, written in the variable `t`.
        #[arg(long = "F", allow_hyphen_values = true)]
        convex: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = f64::NEG_INFINITY)]
        c: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = f64::INFINITY)]
        d: f64,
        /// Optional slope of a supporting line of F, for the support-gap diagnostic.
        #[arg(long, allow_hyphen_values = true)]
        subgradient: Option<String>,
        /// Run the sampling convexity probe with this many pairs.
        #[arg(long)]
        probe_samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Weighted AM-GM inequality on the integer window {1, ..., n+1}.
    Amgm {
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Comma-separated g(1), ..., g(n+1).
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// J[x] = ∫_0^1 x'(t)^2 and its Schwarz lower bound for admissible x.
    VariationalDemo {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized Hölder / Cauchy–Schwarz / Minkowski / Jensen trials.
    PropertySuite {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Plain-text file receiving violation witnesses.
        #[arg(long, default_value = "tscale-witnesses.txt")]
        witness_file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}
