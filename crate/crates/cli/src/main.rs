//! `chisholm`: fit and evaluate diagonal Chisholm and Pade approximants.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::render::Format;

#[derive(Parser)]
#[command(name = "chisholm", version, about = "Fit and evaluate diagonal Chisholm and Pade approximants")]
struct Cli {
    /// Largest accepted approximant order.
    #[arg(long, env = "CHISHOLM_MAX_ORDER", default_value_t = 25, global = true)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

/// Where a series comes from.
#[derive(Args, Debug)]
pub struct Source {
    /// Series file (JSON).
    #[arg(required_unless_present = "generator")]
    input: Option<PathBuf>,
    /// Built-in generator instead of a file (see `gen --list`).
    #[arg(long, short, conflicts_with = "input")]
    generator: Option<String>,
    /// Total-degree bound for generated series [default: 2M+1].
    #[arg(long)]
    degree: Option<usize>,
    /// Expansion centre `a,b` for generated series.
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    /// Generator parameters, e.g. `a=1/2,b1=1/3`.
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
}

/// Fit settings shared by `fit` and `error-table`.
#[derive(Args, Debug)]
pub struct FitOptions {
    /// Approximant order M.
    #[arg(long, short = 'M')]
    order: usize,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    /// Polynomial added before fitting and subtracted from values, e.g. `1+x+y`.
    #[arg(long, allow_hyphen_values = true)]
    offset: Option<String>,
    /// Substitute `z1 = x-y`, `z2 = x+y` before fitting.
    #[arg(long)]
    rotate_pm: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a Chisholm approximant and write it as JSON.
    Fit {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        fit: FitOptions,
        /// Output file [default: standard output].
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Also evaluate at `x,y` (repeatable).
        #[arg(long = "point", short = 'p', allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(long, default_value_t = 10)]
        precision: usize,
    },
    /// Evaluate a Chisholm approximant file at points `x,y`.
    Eval {
        file: PathBuf,
        #[arg(long = "point", short = 'p', required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        /// Significant digits.
        #[arg(long, default_value_t = 10)]
        precision: usize,
    },
    /// Compare a fit against the generator's reference values on a grid.
    ErrorTable {
        /// Generator name.
        generator: String,
        #[command(flatten)]
        fit: FitOptions,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        /// Grid values used for both coordinates.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Grid values for x.
        #[arg(long, allow_hyphen_values = true)]
        xs: Option<String>,
        /// Grid values for y.
        #[arg(long, allow_hyphen_values = true)]
        ys: Option<String>,
        /// Terms per index in partial-sum references.
        #[arg(long, default_value_t = 100)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value_t = 10)]
        precision: usize,
    },
    /// Write a generator's series as JSON.
    Gen {
        /// Generator name.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long, required_unless_present = "list")]
        degree: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// List generators and their default parameters.
        #[arg(long)]
        list: bool,
    },
    /// Run one of the bundled comparison workflows.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(chisholm::demos::DEMOS))]
        name: String,
        /// Order [default: 10; li22 runs 5, 10, 15 and 20].
        #[arg(long, short = 'M')]
        order: Option<usize>,
        /// Recentre the elementary demos at `a,b`.
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
        backend: BackendArg,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        #[arg(long, default_value_t = 10)]
        precision: usize,
    },
    /// Fit a diagonal Pade approximant to a univariate series.
    PadeFit {
        #[command(flatten)]
        source: Source,
        #[arg(long, short = 'M')]
        order: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
        backend: BackendArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Evaluate a Pade approximant file at points `z`.
    PadeEval {
        file: PathBuf,
        #[arg(long = "point", short = 'p', required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(long, default_value_t = 10)]
        precision: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if let Some(hint) = commands::hint(&err) {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(commands::exit_code(&err))
        }
    }
}
