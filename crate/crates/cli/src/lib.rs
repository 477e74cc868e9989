//! The `qgini` command line.
//!
//! ```text
//! qgini probe    --input <path> [--format json|csv]
//! qgini example  --dim <odd> [--format json|csv]
//! qgini estimate --dim <odd> [--restarts N] [--iters N] [--seed S] [--format json|csv]
//! qgini sweep    --dims <d1,d2,...> [--restarts N] [--iters N] [--seed S] [--format json|csv]
//! qgini check    --dim <odd> [--samples N] [--seed S]
//! ```
//!
//! One document goes to stdout; diagnostics go to stderr. Exit status is 0
//! on success, 1 for invalid input (bad state file, even dimension, failed
//! check) and 2 for usage errors.

pub mod record;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgini::audit::run_audit;
use qgini::gini::GiniReport;
use qgini::lorenz::lorenz_curve;
use qgini::qsystem::{DensityMatrix, QuantumSystem};
use qgini::statefile::read_state_file;
use qgini::uncertainty::{
    bounds, estimate_sup_gini, example_gini_closed_form, example_state, EtaEstimate,
};
use serde_json::Value;

use record::{push_estimate, state_record, to_csv, Field, Record};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Fixed CSV header of `sweep`.
pub const SWEEP_HEADER: &str =
    "dim,gini_cap,g_lower,eta_upper,example_g_xp,g_sup_estimate,eta_estimate";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "qgini",
    version,
    about = "Lorenz values, Gini indices and the Gini uncertainty coefficient"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Independent pattern-search restarts.
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    /// Sweeps per restart.
    #[arg(long = "iters", default_value_t = 2000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report Gini indices and Lorenz values of a state file.
    Probe {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Report the extremal example state |X;0> + |P;0>.
    Example {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Estimate sup G_XP and the uncertainty coefficient.
    Estimate {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Bounds, example value and estimate for several dimensions.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run the Lorenz/Gini property suites on seeded samples.
    Check {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Invalid(String),
    /// The audit document and the names of the failed checks.
    Check(Value, Vec<&'static str>),
}

impl From<qgini::Error> for Failure {
    fn from(e: qgini::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

enum Document {
    Records(Vec<Record>, bool),
    Json(Value),
}

fn render(doc: &Document, format: OutputFormat) -> String {
    match (doc, format) {
        (Document::Records(rs, _), OutputFormat::Csv) => to_csv(rs),
        (Document::Records(rs, single), OutputFormat::Json) => {
            let value = if *single {
                rs[0].to_json()
            } else {
                Value::Array(rs.iter().map(Record::to_json).collect())
            };
            serde_json::to_string_pretty(&value).expect("serializable") + "\n"
        }
        (Document::Json(v), _) => serde_json::to_string_pretty(v).expect("serializable") + "\n",
    }
}

fn report_state(sys: &QuantumSystem, label: &str, rho: &DensityMatrix) -> Result<Record, Failure> {
    let px = sys.position_probs(rho)?;
    let pp = sys.momentum_probs(rho)?;
    let g = GiniReport::from_distributions(&px, &pp);
    Ok(state_record(
        label,
        &g,
        &lorenz_curve(&px),
        &lorenz_curve(&pp),
        &bounds(sys.dim())?,
    ))
}

fn state_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".to_string())
}

fn estimate(d: usize, budget: &Budget) -> Result<(QuantumSystem, EtaEstimate), Failure> {
    let sys = QuantumSystem::new(d)?;
    let est = estimate_sup_gini(&sys, budget.restarts, budget.iterations, budget.seed)?;
    Ok((sys, est))
}

fn sweep_row(d: usize, budget: &Budget) -> Result<Record, Failure> {
    let (_, est) = estimate(d, budget)?;
    let b = est.bounds;
    let mut r = Record::default();
    r.push("dim", Field::Int(d as u64))
        .push("gini_cap", Field::Num(b.gini_cap))
        .push("g_lower", Field::Num(b.g_lower))
        .push("eta_upper", Field::Num(b.eta_upper))
        .push("example_g_xp", Field::Num(example_gini_closed_form(d)?))
        .push("g_sup_estimate", Field::Num(est.g_sup_estimate))
        .push("eta_estimate", Field::Num(est.eta_estimate));
    Ok(r)
}

fn execute(command: &Command, err: &mut dyn Write) -> Result<(Document, OutputFormat), Failure> {
    match command {
        Command::Probe { input, format } => {
            let state = read_state_file(input)?;
            let sys = QuantumSystem::new(state.dim())?;
            let rec = report_state(&sys, &state_label(input), &state.density()?)?;
            Ok((Document::Records(vec![rec], true), *format))
        }
        Command::Example { dim, format } => {
            let sys = QuantumSystem::new(*dim)?;
            let rho = qgini::qsystem::pure_density(&example_state(&sys))?;
            let mut rec = report_state(&sys, "example", &rho)?;
            rec.push(
                "g_xp_closed_form",
                Field::Num(example_gini_closed_form(*dim)?),
            );
            Ok((Document::Records(vec![rec], true), *format))
        }
        Command::Estimate {
            dim,
            budget,
            format,
        } => {
            let (sys, est) = estimate(*dim, budget)?;
            let rho = qgini::qsystem::pure_density(&est.best_state)?;
            let mut rec = report_state(&sys, "estimate_best", &rho)?;
            push_estimate(&mut rec, &est);
            if !est.converged {
                let _ = writeln!(
                    err,
                    "warning: best restart did not converge within {} sweeps",
                    est.iterations
                );
            }
            Ok((Document::Records(vec![rec], true), *format))
        }
        Command::Sweep {
            dims,
            budget,
            format,
        } => {
            for &d in dims {
                qgini::qsystem::check_dimension(d)?;
            }
            let rows = dims
                .iter()
                .map(|&d| sweep_row(d, budget))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((Document::Records(rows, false), *format))
        }
        Command::Check { dim, samples, seed } => {
            let sys = QuantumSystem::new(*dim)?;
            let report = run_audit(&sys, *samples, *seed)?;
            let failed: Vec<&'static str> = report
                .checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| c.name)
                .collect();
            let mut doc = serde_json::to_value(&report).expect("serializable");
            doc["passed"] = Value::Bool(failed.is_empty());
            if failed.is_empty() {
                Ok((Document::Json(doc), OutputFormat::Json))
            } else {
                Err(Failure::Check(doc, failed))
            }
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli.command, err) {
        Ok((doc, format)) => {
            let _ = out.write_all(render(&doc, format).as_bytes());
            EXIT_OK
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Check(doc, failed)) => {
            let _ = out.write_all(render(&Document::Json(doc), OutputFormat::Json).as_bytes());
            let _ = writeln!(err, "error: property check failed: {}", failed.join(", "));
            EXIT_INVALID
        }
    }
}
