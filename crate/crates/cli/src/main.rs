//! Command-line front end: compute bounds from files or inline
//! parameters, reproduce the built-in reference table, run the validity
//! suite, and tabulate bound comparisons.
//!
//! Exit codes: 0 on success, 1 when a verification command finds a
//! failure, 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

mod commands;
mod inputs;
mod report;

#[derive(Parser, Debug)]
#[command(
    name = "unionbound",
    version,
    about = "Finite-sample lower bounds for union probabilities of weakly dependent events"
)]
struct Cli {
    /// Emit the full JSON report instead of the human-readable summary
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON report to this file; relative paths resolve
    /// under $UNIONBOUND_OUT_DIR when that variable is set
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one bound
    Bound {
        #[command(subcommand)]
        kind: BoundKind,
    },
    /// Recompute the built-in two-state chain reference table and check
    /// it against the expected values
    VerifyTable,
    /// Run the randomized validity suite against exact oracles
    Validate(ValidateArgs),
    /// Tabulate the bounds against the exact union, one row per spacing
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct MarginalsArg {
    /// Marginal probabilities file (CSV: one value per line; .json:
    /// {"probs":[...]})
    #[arg(long, value_name = "FILE")]
    marginals: PathBuf,
}

#[derive(Args, Debug)]
struct ProfileArg {
    /// Mixing profile JSON, e.g.
    /// {"kind":"geometric","C":1.0,"rho":0.5,"family":"phi","restriction":null}
    #[arg(long, value_name = "FILE")]
    profile: PathBuf,
}

#[derive(Args, Debug)]
struct BandArg {
    /// Pairwise intersections file (CSV: "i,j,value" lines; .json:
    /// `{"band":{"W":..,"entries":[[i,j,v],...]}}`)
    #[arg(long, value_name = "FILE")]
    band: PathBuf,
}

#[derive(Subcommand, Debug)]
enum BoundKind {
    /// Residue-class bound with the residual inside the exponent
    Phi {
        #[command(flatten)]
        marginals: MarginalsArg,
        #[command(flatten)]
        profile: ProfileArg,
        /// Spacing parameter
        #[arg(long = "L")]
        spacing: usize,
    },
    /// Spacing-optimised residue-class bound
    PhiOpt {
        #[command(flatten)]
        marginals: MarginalsArg,
        #[command(flatten)]
        profile: ProfileArg,
    },
    /// Blocked strong-mixing bound with an additive correction
    Alpha {
        #[command(flatten)]
        marginals: MarginalsArg,
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long = "L")]
        spacing: usize,
    },
    /// Strong-mixing bound sharpened by a positive lower mass
    AlphaLowerMass {
        #[command(flatten)]
        marginals: MarginalsArg,
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long = "L")]
        spacing: usize,
    },
    /// Windowed bound, residual inside the exponent
    WindowPhi {
        #[command(flatten)]
        marginals: MarginalsArg,
        #[command(flatten)]
        profile: ProfileArg,
        /// Window shift i
        #[arg(long = "i")]
        shift: usize,
        /// Mass threshold n for the window
        #[arg(long = "n")]
        mass: usize,
        #[arg(long = "L")]
        spacing: usize,
        /// Override the minimal mass-threshold index Φ(i+n)
        #[arg(long, value_name = "INDEX")]
        phi_override: Option<usize>,
    },
    /// Windowed bound, additive correction
    WindowAlpha {
        #[command(flatten)]
        marginals: MarginalsArg,
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long = "i")]
        shift: usize,
        #[arg(long = "n")]
        mass: usize,
        #[arg(long = "L")]
        spacing: usize,
        #[arg(long, value_name = "INDEX")]
        phi_override: Option<usize>,
    },
    /// Shifted-block Bonferroni refinement with local intersections
    SecondOrder {
        #[command(flatten)]
        marginals: MarginalsArg,
        #[command(flatten)]
        band: BandArg,
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long = "L")]
        spacing: usize,
        /// Weight pairs by (L-d)/L instead of counting them fully
        #[arg(long)]
        weighted: bool,
    },
    /// Second-moment bound from the full intersection table
    ChungErdos {
        #[command(flatten)]
        marginals: MarginalsArg,
        #[command(flatten)]
        band: BandArg,
    },
    /// Fixed-spacing bound for a geometric envelope and positive lower
    /// mass
    GeomPhi {
        #[command(flatten)]
        marginals: MarginalsArg,
        /// Envelope constant C >= 1
        #[arg(long = "C")]
        c: f64,
        /// Envelope ratio in (0,1)
        #[arg(long)]
        rho: f64,
    },
    /// Spacing schedule for a polynomial strong-mixing envelope
    PolyAlpha {
        /// Total first-moment mass S_N (alternative to --marginals)
        #[arg(long = "SN", conflicts_with = "marginals")]
        sn: Option<f64>,
        /// Number of events N (used with --SN)
        #[arg(long = "N", requires = "sn", conflicts_with = "marginals")]
        n: Option<usize>,
        /// Marginals file (alternative to --SN/--N)
        #[arg(long, value_name = "FILE")]
        marginals: Option<PathBuf>,
        /// Envelope constant C >= 1
        #[arg(long = "C")]
        c: f64,
        /// Envelope decay exponent
        #[arg(long)]
        gamma: f64,
        /// Exponent split in (0,1]; defaults to 2/(gamma+2)
        #[arg(long)]
        theta: Option<f64>,
    },
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Number of random joint tables to draw
    #[arg(long, default_value_t = 200)]
    models: usize,

    /// Largest table length (at most 10)
    #[arg(long = "n-max", default_value_t = 8)]
    n_max: usize,

    /// Seed for the table generator (no time-derived default)
    #[arg(long)]
    seed: u64,

    /// Fault-injection offset added to every bound (testing hook)
    #[arg(long, hide = true, default_value_t = 0.0)]
    corrupt: f64,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CompareModel {
    /// Two-state chain: transition probabilities a, b and length N
    #[arg(long, num_args = 3, value_names = ["A", "B", "N"])]
    markov: Option<Vec<String>>,

    /// Duplicated-block family: range m, probability p, block count q
    #[arg(long, num_args = 3, value_names = ["M", "P", "Q"])]
    block: Option<Vec<String>>,

    /// Explicit joint table file (JSON or raw binary)
    #[arg(long, value_name = "FILE")]
    table: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    model: CompareModel,

    /// Smallest spacing to tabulate
    #[arg(long = "l-min", default_value_t = 0)]
    l_min: usize,

    /// Largest spacing to tabulate
    #[arg(long = "l-max")]
    l_max: usize,

    /// Add a Monte Carlo estimate with this many trials
    #[arg(long, requires = "seed")]
    trials: Option<u64>,

    /// Seed for the Monte Carlo estimate (required with --trials)
    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads for the Monte Carlo estimate
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let json = cli.json;
    let out = cli.out.clone();
    let result = match cli.command {
        Command::Bound { kind } => commands::bound::run(kind, json, out.as_deref()),
        Command::VerifyTable => commands::verify_table::run(json, out.as_deref()),
        Command::Validate(args) => commands::validate::run(args, json, out.as_deref()),
        Command::Compare(args) => commands::compare::run(args, json, out.as_deref()),
    };

    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
