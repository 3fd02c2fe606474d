use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pelltrib::factor::FactoringEffort;

#[derive(Debug, Parser)]
#[command(
    name = "pelltrib",
    version,
    about = "Certified computations for Tribonacci numbers among X-coordinates of Pell equations",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Flags shared by every subcommand. Each can also come from a
/// `PELLTRIB_*` environment variable.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Working precision of the first evaluation, in bits.
    #[arg(long, global = true, env = "PELLTRIB_PRECISION_BITS", default_value_t = 192,
          value_parser = clap::value_parser!(u32).range(64..))]
    pub precision_bits: u32,
    /// Precision cap; refinement past it reports insufficient precision.
    #[arg(long, global = true, env = "PELLTRIB_MAX_BITS", default_value_t = 8192,
          value_parser = clap::value_parser!(u32).range(64..=1_048_576))]
    pub max_bits: u32,
    #[arg(long, global = true, env = "PELLTRIB_OUTPUT", value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Worker threads for the sweeps.
    #[arg(long, global = true, env = "PELLTRIB_JOBS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub jobs: u64,
    /// `default`, `trial-only`, or `TRIAL:RHO` (trial-division bound and
    /// Pollard rho iteration budget).
    #[arg(long, global = true, env = "PELLTRIB_FACTORING_EFFORT", default_value = "default")]
    pub factoring_effort: FactoringEffort,
    /// Convergents tried per reduction before giving up.
    #[arg(long, global = true, env = "PELLTRIB_CONVERGENT_BUDGET", default_value_t = 8,
          value_parser = clap::value_parser!(u64).range(1..=1000))]
    pub convergent_budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    #[value(name = "+1", alias = "1", alias = "plus")]
    Plus,
    #[value(name = "-1", alias = "minus")]
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Standard reduction, then the homogeneous form if it fails.
    Auto,
    Standard,
    Homogeneous,
}

/// Parameters of the sweep-style searches.
#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 100)]
    pub m1_max: u64,
    #[arg(long, default_value_t = 69)]
    pub n1_max: u64,
    /// Window `m2 <= this` searched exhaustively after reduction.
    #[arg(long, default_value_t = 100)]
    pub m2_check_max: u64,
    /// `B` in the reduction: a decimal or `alpha^(3/2)`.
    #[arg(long, default_value = "2.4")]
    pub b: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print T_m, or T_m..=T_to.
    Trib {
        m: usize,
        #[arg(long)]
        to: Option<usize>,
    },
    /// Binet constants with their certified brackets.
    Constants {
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// Fundamental solution of X^2 - d Y^2 = +-1.
    PellFundamental { d: String },
    /// X_n and Y_n for a given d.
    PellX {
        d: String,
        n: u64,
    },
    /// Squarefree decomposition n = d y^2.
    Sqfree { n: String },
    /// Continued fraction of `chi`, `sqrt:N`, `kappa:X1:EPS` or `kappa-d:D`.
    Cf {
        target: String,
        #[arg(long, conflicts_with = "q_above")]
        terms: Option<usize>,
        /// Expand until a denominator exceeds this.
        #[arg(long)]
        q_above: Option<String>,
    },
    /// Matveev lower bound for log |Lambda|.
    Matveev {
        /// Degree d_L of the number field.
        #[arg(long)]
        d_l: u32,
        /// max(|d_i|) (floored at 3 by the bound).
        #[arg(long)]
        big_d: String,
        /// Comma-separated height parameters A_1,...,A_l.
        #[arg(long, value_delimiter = ',', required = true)]
        heights: Vec<String>,
    },
    /// Laurent-Mignotte-Nesterenko lower bound for log |Lambda|.
    Lmn {
        #[arg(long)]
        d_l: u32,
        #[arg(long)]
        log_b1: String,
        #[arg(long)]
        log_b2: String,
        #[arg(long)]
        b_prime: String,
    },
    /// Recompute the bound chain and compare with the rounded constants.
    DeriveBounds,
    /// Baker-Davenport reduction for delta = X1 + sqrt(X1^2 - EPS).
    Reduce {
        #[arg(long, conflicts_with = "d")]
        x1: Option<String>,
        #[arg(long, value_enum, default_value = "+1", allow_hyphen_values = true)]
        epsilon: Sign,
        /// Use the fundamental solution for this d instead of --x1.
        #[arg(long)]
        d: Option<String>,
        #[arg(long, default_value = "1e16")]
        m_bound: String,
        #[arg(long, default_value = "14.8")]
        a: String,
        #[arg(long, default_value = "2.4")]
        b: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Solve P^eps_n1(X) = T_m1 for 2 <= n1 < m1.
    SolveSmall {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check every X1 = T_m1 with both signs.
    TrivialSweep {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run every stage and compare with the expected exceptional set.
    VerifyTheorem {
        #[command(flatten)]
        search: SearchArgs,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}
