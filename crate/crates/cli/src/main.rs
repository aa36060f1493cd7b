//! `pnorm`: batch command-line front end for the p-norm test library.
//!
//! Exit codes: 0 success, 2 configuration or input error, 3 numeric failure.
//! Diagnostics go to stderr, summaries to stdout.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "pnorm", version, about = "Calibration, power and consistency experiments for p-norm based tests")]
pub struct Cli {
    /// Flat `key = value` file supplying defaults for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker threads. Results do not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// More log output on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Critical values for a single, combined or minimax-adaptive test.
    Calibrate(CalibrateArgs),
    /// Power curves over alternative families.
    Power(PowerArgs),
    /// Consistency-criterion traces, contour grids and minimax radii.
    Consistency(ConsistencyArgs),
    /// 2-norm and sup-norm max-combination against the semi-sparse alternative.
    DemoPe(DemoPeArgs),
    /// Power enhancement of a single p-norm test.
    DemoEnhance(DemoEnhanceArgs),
    /// Reduce a Gaussian linear regression to the sequence model.
    Reduce(ReduceArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct McArgs {
    /// Base seed of the Monte-Carlo streams.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Replications per RNG stream chunk.
    #[arg(long)]
    pub chunk_size: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Single-test exponent: a number, `sup`/`inf`, or `e^k+1`.
    #[arg(long)]
    pub p: Option<String>,
    /// Combined test from an exponent preset: `study` (alias `sec6`) or `linear`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Combined test from an explicit comma-separated exponent list.
    #[arg(long)]
    pub exponents: Option<String>,
    /// `geometric:δ0:γ` or `custom:α1,α2,…`.
    #[arg(long)]
    pub budget: Option<String>,
    /// Minimax-adaptive test over j = 1..p_d.
    #[arg(long)]
    pub minimax_pd: Option<usize>,
    /// Fixed r_d for the minimax-adaptive test; calibrated by simulation if absent.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Use the asymptotic formula (single tests only).
    #[arg(long)]
    pub asymptotic: bool,
    /// Null replications.
    #[arg(long)]
    pub reps: Option<usize>,
    /// Artifact file name inside the output directory.
    #[arg(long)]
    pub name: Option<String>,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Args, Debug)]
pub struct PowerArgs {
    /// All three families of the numerical study with its six tests.
    #[arg(long)]
    pub figure3: bool,
    /// Experiment size: `desk`, `full` or `study` (both study dimensions).
    #[arg(long)]
    pub scale: Option<String>,
    /// Same as `--scale study`.
    #[arg(long)]
    pub paper_scale: bool,
    /// Comma-separated families, e.g. `dense,sparse,dagger`.
    #[arg(long)]
    pub family: Option<String>,
    /// Comma-separated tests: exponents, `psi`, `psi_star`.
    #[arg(long)]
    pub tests: Option<String>,
    /// Pre-calibrated artifacts to include (comma-separated paths).
    #[arg(long)]
    pub artifacts: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// `auto`, `lo:hi:n` or a comma-separated list.
    #[arg(long)]
    pub a_grid: Option<String>,
    #[arg(long)]
    pub calib_reps: Option<usize>,
    #[arg(long)]
    pub power_reps: Option<usize>,
    /// p_d of `psi_star`.
    #[arg(long)]
    pub minimax_pd: Option<usize>,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Args, Debug)]
pub struct ConsistencyArgs {
    /// Criterion over a 2-d grid instead of a d-trace.
    #[arg(long)]
    pub contour: bool,
    /// Print the minimax separation radius.
    #[arg(long)]
    pub radius: bool,
    /// Exponent for `--contour` and `--radius`.
    #[arg(long)]
    pub p: Option<String>,
    /// Shorthand for `--p sup`.
    #[arg(long)]
    pub sup: bool,
    #[arg(long)]
    pub d: Option<usize>,
    /// Alternative family for traces, e.g. `dagger`, `dense:0.5`, `powersparse:2`.
    #[arg(long)]
    pub family: Option<String>,
    /// Comma-separated exponents for traces.
    #[arg(long)]
    pub exponents: Option<String>,
    /// `geometric:lo:hi` or a comma-separated list.
    #[arg(long)]
    pub dgrid: Option<String>,
    /// Supremum-norm trace form: `ratio` or `g`.
    #[arg(long)]
    pub sup_form: Option<String>,
    /// Also write norm-part and sparsity diagnostics along the d-grid.
    #[arg(long)]
    pub diagnostics: bool,
    /// Threshold δ of the sparsity diagnostic.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Contour axis range `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Contour points per axis.
    #[arg(long)]
    pub resolution: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DemoPeArgs {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub alpha_inf: Option<f64>,
    /// Scale a of the alternative a·ϑ†.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub calib_reps: Option<usize>,
    #[arg(long)]
    pub power_reps: Option<usize>,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Args, Debug)]
pub struct DemoEnhanceArgs {
    #[arg(long)]
    pub d: Option<usize>,
    /// Exponent of the base test.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub calib_reps: Option<usize>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Whitespace-delimited rows `z x_1 … x_d`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file name inside the output directory.
    #[arg(long)]
    pub name: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
