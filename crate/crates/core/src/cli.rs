//! Command-line front end. [`run`] is the whole program minus process exit,
//! so tests can drive it with in-memory streams.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::dsl::{format_ratfun, parse_spec, OutputFormat};
use crate::error::Error;
use crate::ratfun::SeriesPrefix;
use crate::recurrence::{
    gf_squares, gf_squares_with, lemma_residuals, oracle_products, oracle_sequence, weighted_gf,
    FSystem, Family, RecurrenceSpec, Tamper,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const DEFAULT_TERMS: usize = 40;

#[derive(Debug, Parser)]
#[command(
    name = "squares-gf",
    version,
    about = "Generating functions of squared linear recurrences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print sum a(n)^2 x^n as a rational function.
    Gf {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print the coefficients of x^0..x^N of the generating function, one per line.
    Series {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
    },
    /// Check the generating function against brute-force unrolling.
    Verify {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = DEFAULT_TERMS as u64, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
        /// Corrupt one matrix entry branch before verifying (mutation testing).
        #[arg(long, hide = true)]
        tamper: Option<Tamper>,
    },
    /// Print sum n a(n)^2 x^n as a rational function.
    Weighted {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Generating function for a built-in family.
    Table {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Path to a spec file, or an inline spec prefixed with `spec:`.
    #[arg(long = "spec")]
    pub source: String,
}

/// Failure modes of a command, mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Input(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Mismatch) => EXIT_MISMATCH,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn load_spec(arg: &SpecArg, err: &mut dyn Write) -> Result<RecurrenceSpec, Failure> {
    let (origin, text) = match arg.source.strip_prefix("spec:") {
        Some(inline) => ("<inline>".to_string(), inline.to_string()),
        None => {
            let text = fs::read_to_string(&arg.source)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", arg.source)))?;
            (arg.source.clone(), text)
        }
    };
    let spec = parse_spec(&text).map_err(|e| Failure::Input(format!("{origin}: {e}")))?;
    if !spec.is_minimal_order() {
        let _ = writeln!(
            err,
            "warning: coefficient of a(n-{}) is zero; the order is not minimal",
            spec.order()
        );
    }
    Ok(spec)
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(|e| Failure::Input(format!("write failed: {e}")))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Gf { spec, format } => {
            let spec = load_spec(&spec, err)?;
            emit(out, &format_ratfun(&gf_squares(&spec)?, format))
        }
        Command::Series { spec, terms } => {
            let spec = load_spec(&spec, err)?;
            let series = gf_squares(&spec)?.series(terms)?;
            for c in series.coeffs() {
                emit(out, &c.to_string())?;
            }
            Ok(())
        }
        Command::Verify {
            spec,
            terms,
            tamper,
        } => {
            let spec = load_spec(&spec, err)?;
            let terms =
                usize::try_from(terms).map_err(|_| Failure::Input("--terms too large".into()))?;
            let checks = verify(&spec, terms, tamper);
            let mut all_pass = true;
            for check in &checks {
                emit(out, &check.to_string())?;
                all_pass &= check.passed();
            }
            if all_pass {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Weighted { spec, format } => {
            let spec = load_spec(&spec, err)?;
            emit(out, &format_ratfun(&weighted_gf(&spec)?, format))
        }
        Command::Table { family, k, format } => {
            let spec = family.spec(k)?;
            emit(out, &format_ratfun(&gf_squares(&spec)?, format))
        }
    }
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn from_result(name: &'static str, r: Result<(), String>) -> Self {
        Check {
            name,
            failure: r.err(),
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}", self.name),
            Some(why) => write!(f, "FAIL {}: {why}", self.name),
        }
    }
}

fn first_divergence(
    label: &str,
    formula: &SeriesPrefix,
    oracle: &SeriesPrefix,
) -> Result<(), String> {
    match formula
        .coeffs()
        .iter()
        .zip(oracle.coeffs())
        .position(|(a, b)| a != b)
    {
        None => Ok(()),
        Some(n) => Err(format!(
            "{label}first divergence at n={n}: formula {}, oracle {}",
            formula.coeffs()[n],
            oracle.coeffs()[n]
        )),
    }
}

/// Runs every cross-check up to `x^terms`. The tamper, when given, is applied
/// to the matrix builders only; the oracle and the lemma identities never see it.
pub fn verify(spec: &RecurrenceSpec, terms: usize, tamper: Option<Tamper>) -> Vec<Check> {
    let squares: SeriesPrefix =
        SeriesPrefix(oracle_sequence(spec, terms).iter().map(|a| a * a).collect());

    let gf = gf_squares_with(spec, tamper);
    let gf_check = gf
        .as_ref()
        .map_err(ToString::to_string)
        .and_then(|g| g.series(terms).map_err(|e| e.to_string()))
        .and_then(|s| first_divergence("", &s, &squares));

    let system = FSystem::build_with(spec, tamper);
    let solved = system.solve().map_err(|e| e.to_string());
    let f_check = solved.as_ref().map_err(Clone::clone).and_then(|fs| {
        fs.iter().enumerate().try_for_each(|(d, f)| {
            let oracle = oracle_products(spec, d, terms).map_err(|e| e.to_string())?;
            let series = f.series(terms).map_err(|e| e.to_string())?;
            first_divergence(&format!("F_{d}: "), &series, &oracle)
        })
    });

    let relation_check = match (&gf, &solved) {
        (Ok(g), Ok(fs)) if fs[0].equals(&g.shift(1)) => Ok(()),
        (Ok(_), Ok(_)) => Err("F_0 differs from x times the generating function".to_string()),
        _ => Err("skipped: an upstream computation failed".to_string()),
    };

    let lemma_check = lemma_residuals(spec, terms)
        .map_err(|e| e.to_string())
        .and_then(|res| {
            res.iter()
                .enumerate()
                .try_for_each(|(i, r)| match r.first_nonzero() {
                    None => Ok(()),
                    Some(n) => Err(format!("identity {i} leaves {} at n={n}", r.coeffs()[n])),
                })
        });

    vec![
        Check::from_result("squares-vs-oracle", gf_check),
        Check::from_result("f-system-vs-oracle", f_check),
        Check::from_result("f0-relation", relation_check),
        Check::from_result("lemma-residuals", lemma_check),
    ]
}
