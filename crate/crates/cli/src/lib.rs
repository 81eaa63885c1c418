//! Command-line front end for the exact log-symplectic analyzer.
//!
//! Subcommands:
//!
//! - `analyze`: full report — Pfaffian, pair/triple classification, the
//!   unobstructedness-criterion verdict, kernel-equation sign checks, and
//!   the monomial deformation sweep with closedness certificates.
//! - `pfaffian`: just the Pfaffian of the residue matrix.
//! - `residues`: pair/triple classification and the verdict.
//! - `deform-search`: the monomial deformation sweep on its own.
//! - `verify-complexes`: desk-scale homological checks (cone homotopy
//!   identity, normal-complex acyclicity with an untwisted control, and
//!   principal-parts exactness).
//!
//! Reports go to standard output as text or JSON; diagnostics go to
//! standard error.  Exit codes: 0 success, 1 input error, 2 degenerate
//! structure (vanishing Pfaffian), 3 verification failure.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub mod input;
pub mod render;
pub mod report;

/// Failure modes with their process exit codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input files, bad flags, or out-of-range sizes (exit 1).
    Input(String),
    /// Structurally valid input whose Pfaffian vanishes (exit 2).
    Degenerate(String),
    /// A verification run found a failing check (exit 3).
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Degenerate(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Degenerate(m) | CliError::Verification(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "logsym",
    version,
    about = "Exact-arithmetic analyzer for log-symplectic residue data",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis: Pfaffian, residues, verdict, and deformation sweep
    Analyze {
        /// Path to a JSON model file
        model: PathBuf,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Total-degree bound for the deformation sweep
        #[arg(long, default_value_t = 6)]
        deform_max_degree: i64,
    },
    /// Print the Pfaffian of the residue matrix
    Pfaffian {
        /// Path to a JSON model file
        model: PathBuf,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify branch pairs and triples and print the verdict
    Residues {
        /// Path to a JSON model file
        model: PathBuf,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sweep closed monomial deformation candidates
    DeformSearch {
        /// Path to a JSON model file
        model: PathBuf,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Total-degree bound for the sweep
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
    },
    /// Run the desk-scale homological verifiers
    VerifyComplexes {
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Ambient dimension (1..=6)
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Exponent truncation per coordinate (0..=3)
        #[arg(long, default_value_t = 2)]
        truncation: i64,
        /// Twist orders for the principal-parts check (comma separated)
        #[arg(long = "j", value_delimiter = ',', default_values_t = vec![1, 2, 3])]
        orders: Vec<i64>,
    },
}

fn emit<T: serde::Serialize>(value: &T, format: Format, text: String) {
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(value).expect("reports always serialize");
            println!("{json}");
        }
        Format::Text => print!("{text}"),
    }
}

fn load(path: &PathBuf) -> Result<logsym_core::Model, CliError> {
    let loaded = input::load_model(path)?;
    for note in &loaded.notes {
        eprintln!("note: {note}");
    }
    Ok(loaded.model)
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze { model, format, deform_max_degree } => {
            if deform_max_degree < 0 {
                return Err(CliError::Input(format!(
                    "--deform-max-degree must be nonnegative, got {deform_max_degree}"
                )));
            }
            let model = load(&model)?;
            let report = report::analysis_report(&model, deform_max_degree);
            emit(&report, format, render::render_analysis(&report));
            Ok(())
        }
        Command::Pfaffian { model, format } => {
            let model = load(&model)?;
            let report = report::pfaffian_report(&model);
            emit(&report, format, render::render_pfaffian(&report));
            Ok(())
        }
        Command::Residues { model, format } => {
            let model = load(&model)?;
            let report = report::residue_report(&model);
            emit(&report, format, render::render_residues(&report));
            Ok(())
        }
        Command::DeformSearch { model, format, max_degree } => {
            if max_degree < 0 {
                return Err(CliError::Input(format!(
                    "--max-degree must be nonnegative, got {max_degree}"
                )));
            }
            let model = load(&model)?;
            let report = report::deform_report(&model, max_degree);
            emit(&report, format, render::render_deform(&report));
            Ok(())
        }
        Command::VerifyComplexes { format, dim, truncation, orders } => {
            let report = report::complex_report(dim, truncation, &orders)?;
            emit(&report, format, render::render_complexes(&report));
            if !report.all_passed {
                return Err(CliError::Verification(
                    "complex verification reported a failing check; see the report".into(),
                ));
            }
            Ok(())
        }
    }
}

/// Parses arguments, runs the requested command, and returns the process
/// exit code.  `argv` must include the program name in first position.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; usage errors are
            // input errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
