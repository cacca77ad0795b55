use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "syzkit",
    version,
    about = "Toric Calabi-Yau surfaces, open invariants and SYZ mirrors"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Numerical tolerance for pass/fail decisions.
    #[arg(long, default_value_t = 1e-6, global = true)]
    pub tolerance: f64,
    /// Gauss-Legendre nodes along each cycle interval.
    #[arg(long, default_value_t = 16, global = true)]
    pub n_t: usize,
    /// Trapezoid nodes around the fiber circle.
    #[arg(long, default_value_t = 16, global = true)]
    pub n_theta: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Identify a Calabi-Yau fan with some Σ_m.
    Classify {
        /// Rays as "x,y;x,y;...".
        #[arg(long, conflicts_with = "input")]
        rays: Option<String>,
        /// JSON file holding {"rays": [[x,y], ...]}.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Admissible sequences with a given center and the series δ_l.
    Invariants {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        /// Keep only classes of total degree at most this.
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Exact comparison of the two constructions of g(z).
    Verify {
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        /// Admissibility rules to switch off, e.g. "drop-cond-4" or "drop-cond-1,3".
        #[arg(long, default_value = "none")]
        mutate: String,
    },
    /// Periods of the holomorphic volume form over the cycles S_l.
    Periods {
        #[arg(long)]
        m: usize,
        /// Kähler parameters q_1,...,q_{m-1}; random (from --seed) when omitted.
        #[arg(long)]
        q: Option<String>,
        /// Single cycle; all cycles when omitted.
        #[arg(long)]
        l: Option<usize>,
    },
    /// The mirror map q -> C, its inverse, and sweeps for plotting.
    MirrorMap {
        #[arg(long)]
        m: usize,
        #[arg(long, conflicts_with = "coefficients")]
        q: Option<String>,
        /// Coefficients C_0,...,C_m.
        #[arg(long = "C", id = "coefficients")]
        coefficients: Option<String>,
        /// Recover q from --C.
        #[arg(long, requires = "coefficients")]
        invert: bool,
        /// Sweep one parameter, e.g. "q1=0.1:0.9:9"; the others come from --q (default 0.5).
        #[arg(long, conflicts_with = "coefficients")]
        sweep: Option<String>,
        /// Shorthand for --format csv.
        #[arg(long)]
        csv: bool,
    },
    /// verify, periods and mirror-map roundtrips for m up to m_max.
    CheckAll {
        #[arg(long, default_value_t = 5)]
        m_max: usize,
    },
}
