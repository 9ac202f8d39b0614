//! Command-line front end: region computation presets, figure
//! reproduction, Fourier-Motzkin projection, discrete-spec evaluation, and
//! envelope comparison.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage error (clap), 3 parameter
//! regime violation, 4 I/O or input-format error.

mod commands;
mod svg;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rate-regions",
    about = "Achievable rate regions and capacity bounds for cognitive interference channels"
)]
struct Cli {
    /// JSON file holding the full command (replaces subcommand flags).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Deserialize, Debug)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Compute one region preset and write its envelope.
    Region(RegionArgs),
    /// Reproduce a named comparison figure (CSV curves plus overlay SVG).
    Figure(FigureArgs),
    /// Project a half-plane system onto a subset of its variables.
    Fm(FmArgs),
    /// Evaluate a registered discrete spec, or run a reduction check.
    Discrete(DiscreteArgs),
    /// Compare two envelope CSV files.
    Compare(CompareArgs),
}

#[derive(Args, Deserialize, Debug)]
pub struct RegionArgs {
    /// One of r1, r2, r3, r4, r5, outer.
    pub name: String,
    #[arg(long)]
    pub p1: f64,
    #[arg(long)]
    pub p2: f64,
    /// Cognitive-link gain.
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "one")]
    pub k: f64,
    /// Interference gain.
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "one")]
    pub b: f64,
    #[arg(long, default_value = ".")]
    #[serde(default = "dot")]
    pub out: PathBuf,
    /// csv, json, or svg.
    #[arg(long, default_value = "csv")]
    #[serde(default = "csv")]
    pub format: String,
    #[arg(long, default_value_t = 512)]
    #[serde(default = "d512")]
    pub samples: usize,
    #[arg(long, default_value_t = 101)]
    #[serde(default = "d101")]
    pub alpha_steps: usize,
    #[arg(long, default_value_t = 101)]
    #[serde(default = "d101")]
    pub beta_steps: usize,
    #[arg(long, default_value_t = 201)]
    #[serde(default = "d201")]
    pub mu_steps: usize,
    #[arg(long, default_value_t = 5.0)]
    #[serde(default = "five")]
    pub mu_max: f64,
}

#[derive(Args, Deserialize, Debug)]
pub struct FigureArgs {
    /// fig5a..fig5c, fig6a..fig6c, fig7a..fig7c, fig8a, fig8b.
    pub id: String,
    #[arg(long, default_value = ".")]
    #[serde(default = "dot")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 512)]
    #[serde(default = "d512")]
    pub samples: usize,
}

#[derive(Args, Deserialize, Debug)]
pub struct FmArgs {
    /// Half-plane system JSON ({"vars": [...], "rows": [{"coeffs", "rhs"}]}).
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated variables to keep, e.g. R1,R2.
    #[arg(long)]
    pub keep: String,
    /// Projection report JSON destination (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Deserialize, Debug)]
pub struct DiscreteArgs {
    /// Registered spec id (inner, inner-pre, inner-seq, outer, strong,
    /// weak, wu, jiang-xin, maric, maric-nosplit, marton, marton-pre,
    /// marton-equiv, semidet).
    #[arg(long)]
    pub spec: Option<String>,
    /// Joint pmf JSON ({"vars", "sizes", "table"}).
    #[arg(long)]
    pub pmf: Option<PathBuf>,
    /// Channel JSON ({"vars": ["x1","x2","y1","y2"], "sizes", "table"}).
    #[arg(long)]
    pub channel: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    #[serde(default = "dot")]
    pub out: PathBuf,
    /// Run a reduction check on random instances: strong, weak, wu,
    /// devroye, jiang-xin, maric, marton.
    #[arg(long)]
    pub check: Option<String>,
    #[arg(long, default_value_t = 100)]
    #[serde(default = "d100")]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
}

#[derive(Args, Deserialize, Debug)]
pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long, default_value_t = 5e-3)]
    #[serde(default = "tol_default")]
    pub tol: f64,
}

fn one() -> f64 {
    1.0
}
fn five() -> f64 {
    5.0
}
fn dot() -> PathBuf {
    PathBuf::from(".")
}
fn csv() -> String {
    "csv".to_string()
}
fn d512() -> usize {
    512
}
fn d101() -> usize {
    101
}
fn d201() -> usize {
    201
}
fn d100() -> usize {
    100
}
fn tol_default() -> f64 {
    5e-3
}

/// Failures carry their exit code: regime violations and bad inputs are
/// distinguishable for scripting.
#[derive(Debug)]
pub enum CliError {
    /// A parameter regime precondition was violated (exit 3).
    Domain(String),
    /// File or format trouble (exit 4).
    Io(String),
    /// A requested check did not pass (exit 1).
    CheckFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match (cli.config, cli.command) {
        (Some(path), None) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read config {}: {e}", path.display());
                    return ExitCode::from(4);
                }
            };
            match serde_json::from_str::<Command>(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: bad config {}: {e}", path.display());
                    return ExitCode::from(4);
                }
            }
        }
        (None, Some(c)) => c,
        (Some(_), Some(_)) => {
            eprintln!("error: --config replaces the subcommand; pass one or the other");
            return ExitCode::from(2);
        }
        (None, None) => {
            eprintln!("error: a subcommand or --config is required (see --help)");
            return ExitCode::from(2);
        }
    };
    let result = match command {
        Command::Region(args) => commands::cmd_region(&args),
        Command::Figure(args) => commands::cmd_figure(&args),
        Command::Fm(args) => commands::cmd_fm(&args),
        Command::Discrete(args) => commands::cmd_discrete(&args),
        Command::Compare(args) => commands::cmd_compare(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Domain(m) | CliError::Io(m) | CliError::CheckFailed(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
