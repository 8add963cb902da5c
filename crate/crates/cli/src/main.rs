//! Command-line front end: homology tables, spectral-sequence page dumps,
//! closed-form oracles, the cross-validation grid, and named replays of the
//! standard worked examples.
//!
//! Exit codes: 0 success, 1 cross-check mismatch, 2 infeasible size,
//! 3 bad input.

mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cache::Cache;
use report::Format;

#[derive(Parser)]
#[command(
    name = "wittkit",
    version,
    about = "Exact homological calculator for Z/p^n-type rings"
)]
struct Cli {
    /// Output format: table, json, or csv
    #[arg(long, global = true, default_value = "table")]
    format: String,

    /// Cache directory (content-addressed JSON results); also read from
    /// WITTKIT_CACHE
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Verify cache hits by recomputation (CI mode)
    #[arg(long, global = true)]
    verify_cache: bool,

    /// Seed for randomized property instances
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Include wall-clock timing in reports (breaks byte-determinism)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Homology tables of a ring spec (brute force)
    Hh {
        /// ring spec: shukla:p,n | wm:p,s,m | truncpoly:p,s,n | poly:p,s
        #[arg(long)]
        ring: String,
        #[arg(long)]
        max_degree: i64,
        /// also split by internal degree up to this bound (graded specs)
        #[arg(long)]
        split_max: Option<i64>,
    },
    /// Spectral-sequence page dump for a filtered ring spec
    Ss {
        #[arg(long)]
        ring: String,
        /// filtration step exponent j (step p^j)
        #[arg(long, default_value_t = 1)]
        step: u32,
        /// homological window "lo:hi"
        #[arg(long, default_value = "0:4")]
        window: String,
        #[arg(long, default_value_t = 2)]
        r_max: i64,
        /// highest filtration column to display
        #[arg(long, default_value_t = 6)]
        s_cap: i64,
        /// truncation level of the filtered model
        #[arg(long)]
        level_cap: Option<i64>,
        /// also compute stabilized cells and extension flags
        #[arg(long)]
        infinity: bool,
    },
    /// Closed-form group oracles
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Cross-validation of engines and formulas against each other
    #[command(subcommand)]
    Crosscheck(CrosscheckCmd),
    /// Named reproductions of the standard worked examples
    Replay {
        /// replay name, or "list" to enumerate
        name: String,
    },
}

#[derive(Subcommand)]
pub enum OracleCmd {
    /// Hochschild homology closed forms
    Hh {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// family: k | kx | truncpoly:n | w | wn:n
        #[arg(long)]
        family: String,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        internal: Option<i64>,
    },
    /// THH of W(k) and W_n(k); modes printed | recomputed | diff
    Thh {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// target: w | wn:n
        #[arg(long)]
        target: String,
        #[arg(long)]
        degree: i64,
        #[arg(long, default_value = "printed")]
        mode: String,
        #[arg(long)]
        relative: bool,
        /// value assigned to the p-adic valuation of 0 in printed formulas
        #[arg(long, default_value_t = 0)]
        nu0: u32,
    },
    /// Witt length of TR in shifted even degree
    TrLength {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        i: i64,
    },
    /// One homogeneous TF column of k[x]/x^n in odd degree
    TfColumn {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        column: u64,
        #[arg(long)]
        degree: i64,
    },
    /// Order ratios |K_{2i-1}| / |K_{2i-2}|
    KRatio {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        non_relative: bool,
    },
    /// Relative K-groups of W_n(k) in low degrees
    KLowdeg {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: i64,
    },
    /// TC of the ground field
    TcK {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        degree: i64,
    },
    /// mod-p homotopy dimensions of TC(W(k)) and K(W(k))
    V0Dims {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// target: tc-wk | k-wk
        #[arg(long)]
        target: String,
        #[arg(long)]
        degree: i64,
    },
    /// K-groups of the residue field
    KFq {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        degree: i64,
    },
}

#[derive(Subcommand)]
pub enum CrosscheckCmd {
    /// The counting identity behind the K-order theorem
    OrderTheorem {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
    },
    /// The full fast cross-validation grid (exit 1 on any mismatch)
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format: Format = match cli.format.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("WITTKIT_CACHE").map(PathBuf::from));
    let ctx = commands::RunContext {
        format,
        cache: cache_dir.and_then(|d| Cache::new(&d).ok()),
        verify_cache: cli.verify_cache,
        seed: cli.seed,
        timing: cli.timing,
    };
    match commands::run(&cli.command, &ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                wittkit_core::Error::Infeasible(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}
