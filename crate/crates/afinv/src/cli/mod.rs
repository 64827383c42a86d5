//! Command-line front end. `run` does all the work and returns what to print
//! and the exit status, so the binary is a thin wrapper and tests can call it
//! in-process.

mod commands;
mod tables;

use crate::bratteli::BratteliError;
use crate::classify::ClassifyError;
use crate::decomp::DecompError;
use crate::enumerate::EnumerateError;
use crate::exactalg::ExactError;
use crate::specimen::{Specimen, SpecimenError};
use crate::spectral::SpectralError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::path::PathBuf;
use thiserror::Error;

pub use commands::parse_witness;
pub use tables::{render_table, TABLES};

/// Exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    /// I/O failure, golden mismatch or an unexpected internal error.
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NON_ISOMORPHIC: i32 = 3;
    /// Undecided, including runs cut short by a cap.
    pub const INCONCLUSIVE: i32 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "afinv", version, about = "Exact invariants of stationary AF-algebras with companion incidence matrices")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads for family classification.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Specimens as `m=1,0,4` or `L=1,2,4`.
    pub specs: Vec<String>,
    /// Read specimens from a file, one per line; `#` starts a comment.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariant bundle of each specimen.
    Invariants {
        #[command(flatten)]
        inputs: Inputs,
        /// Primes for the torsion tensors G₀ ⊗ ℤ_p.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Isomorphism verdict for two specimens.
    Compare {
        #[command(flatten)]
        inputs: Inputs,
        /// Depth to which an attached witness is checked.
        #[arg(long, default_value_t = crate::classify::DEFAULT_WITNESS_DEPTH)]
        depth: usize,
    },
    /// Specimens with a given integer Perron eigenvalue and rank.
    Enumerate {
        #[arg(long)]
        lambda: u64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        classify: bool,
        /// Keep column vectors whose support has gcd > 1.
        #[arg(long)]
        include_gcd_violations: bool,
        #[arg(long, default_value_t = crate::enumerate::DEFAULT_BUDGET)]
        cap: usize,
    },
    /// Bratteli diagram, semigroup and trace values.
    Diagram {
        spec: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Same as `--format dot`.
        #[arg(long)]
        dot: bool,
        /// Keep only these levels and compose the incidence in between.
        #[arg(long, value_delimiter = ',')]
        cuts: Option<Vec<usize>>,
        /// Include exact trace values at stabilized levels (JSON only).
        #[arg(long)]
        trace: bool,
    },
    /// Regenerates a fixture table and compares it with the checked-in copy.
    Reproduce {
        table: String,
        /// Directory of the expected files.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Overwrite the expected file instead of comparing.
        #[arg(long)]
        bless: bool,
    },
    /// Checks an explicit isomorphism witness from a JSON file.
    WitnessCheck {
        a: String,
        b: String,
        /// JSON with `form` = `lambda` and `Lambda`, or `form` = `a_eta`
        /// and `A`, `eta`; `-` reads stdin.
        #[arg(long)]
        witness: PathBuf,
        #[arg(long, default_value_t = crate::classify::DEFAULT_WITNESS_DEPTH)]
        depth: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Specimen(#[from] SpecimenError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Bratteli(#[from] BratteliError),
    #[error("{0}")]
    Usage(String),
    #[error("unknown table {0:?}; known tables: {known}", known = TABLES.join(", "))]
    UnknownTable(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    GoldenMismatch(String),
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        CliError::Classify(e.into())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        CliError::Classify(e.into())
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::Classify(e.into())
    }
}

fn exact_is_cap(e: &ExactError) -> bool {
    matches!(e, ExactError::DegreeBoundExceeded { .. } | ExactError::PrecisionInsufficient)
}

fn decomp_is_cap(e: &DecompError) -> bool {
    match e {
        DecompError::IterationCapExceeded { .. } => true,
        DecompError::Exact(x) | DecompError::Spectral(SpectralError::Exact(x)) => exact_is_cap(x),
        _ => false,
    }
}

fn classify_is_cap(e: &ClassifyError) -> bool {
    match e {
        ClassifyError::Decomp(d) => decomp_is_cap(d),
        ClassifyError::Spectral(SpectralError::Exact(x)) => exact_is_cap(x),
        _ => false,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Specimen(_) | CliError::Usage(_) | CliError::UnknownTable(_) => exit::USAGE,
            CliError::Bratteli(
                BratteliError::GcdNotOne(_)
                | BratteliError::Specimen(_)
                | BratteliError::DepthTooShallow { .. }
                | BratteliError::InvalidCuts(_),
            ) => exit::USAGE,
            CliError::Enumerate(EnumerateError::InvalidFamily(_)) => exit::USAGE,
            CliError::Enumerate(EnumerateError::BudgetExceeded { .. }) => exit::INCONCLUSIVE,
            CliError::Enumerate(EnumerateError::Classify(c)) | CliError::Classify(c) if classify_is_cap(c) => {
                exit::INCONCLUSIVE
            }
            CliError::Classify(ClassifyError::ShapeMismatch(_) | ClassifyError::NotInClass(_)) => exit::USAGE,
            _ => exit::FAILURE,
        }
    }

    /// Name of the innermost error variant, e.g. `GcdNotOne`.
    pub fn kind(&self) -> String {
        let debug = match self {
            CliError::Specimen(e) => format!("{e:?}"),
            CliError::Classify(e) => format!("{e:?}"),
            CliError::Enumerate(e) => format!("{e:?}"),
            CliError::Bratteli(e) => format!("{e:?}"),
            CliError::Usage(_) => "Usage".into(),
            CliError::UnknownTable(_) => "UnknownTable".into(),
            CliError::Io { .. } => "Io".into(),
            CliError::GoldenMismatch(_) => "GoldenMismatch".into(),
        };
        innermost_variant(&debug)
    }
}

/// The last variant name in a nested Debug rendering such as
/// `Classify(Decomp(IterationCapExceeded { cap: 64 }))`.
fn innermost_variant(debug: &str) -> String {
    debug
        .split('(')
        .filter_map(|seg| {
            let name: String = seg.trim_start().chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
            name.starts_with(|c: char| c.is_ascii_uppercase()).then_some(name)
        })
        .next_back()
        .unwrap_or_default()
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Pretty JSON with object keys sorted, so output is byte-stable.
pub(crate) fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("output serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

pub(crate) fn read_text(path: &std::path::Path) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn collect_specimens(inputs: &Inputs) -> Result<Vec<Specimen>, CliError> {
    let mut lines: Vec<String> = inputs.specs.clone();
    if let Some(path) = &inputs.file {
        let text = read_text(path)?;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                lines.push(line.to_string());
            }
        }
    }
    lines.iter().map(|s| s.parse::<Specimen>().map_err(CliError::from)).collect()
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {}: {e}\n", e.kind()) },
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), CliError> {
    let fmt = cli.format;
    let dot_only_for_diagram = || CliError::Usage("--format dot applies only to the diagram command".into());
    match &cli.command {
        Command::Diagram { spec, depth, dot, cuts, trace } => {
            let fmt = if *dot { Format::Dot } else { fmt };
            commands::diagram(spec, *depth, cuts.as_deref(), *trace, fmt)
        }
        _ if fmt == Format::Dot => Err(dot_only_for_diagram()),
        Command::Invariants { inputs, primes } => {
            let specs = collect_specimens(inputs)?;
            let primes = primes.clone().unwrap_or_else(|| crate::classify::DEFAULT_PRIMES.to_vec());
            commands::invariants(&specs, &primes, fmt)
        }
        Command::Compare { inputs, depth } => {
            let specs = collect_specimens(inputs)?;
            let [a, b] = specs.as_slice() else {
                return Err(CliError::Usage(format!("compare takes exactly two specimens, got {}", specs.len())));
            };
            commands::compare(a, b, *depth, fmt)
        }
        Command::Enumerate { lambda, n, classify, include_gcd_violations, cap } => {
            commands::enumerate(*lambda, *n, *classify, *include_gcd_violations, *cap, cli.jobs, fmt)
        }
        Command::Reproduce { table, golden_dir, bless } => {
            tables::reproduce(table, golden_dir.as_deref(), *bless, cli.jobs, fmt)
        }
        Command::WitnessCheck { a, b, witness, depth } => {
            let (a, b) = (a.parse::<Specimen>()?, b.parse::<Specimen>()?);
            commands::witness_check(&a, &b, witness, *depth, fmt)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_names() {
        assert_eq!(innermost_variant("GcdNotOne(2)"), "GcdNotOne");
        assert_eq!(innermost_variant("Classify(Decomp(IterationCapExceeded { cap: 64 }))"), "IterationCapExceeded");
        assert_eq!(innermost_variant("NotInClass(\"m=1,2\")"), "NotInClass");
        assert_eq!(innermost_variant("Overflow"), "Overflow");
    }

    #[test]
    fn cap_errors_are_inconclusive() {
        let e = CliError::Enumerate(EnumerateError::BudgetExceeded { cap: 3 });
        assert_eq!(e.exit_code(), exit::INCONCLUSIVE);
        let e = CliError::from(DecompError::IterationCapExceeded { cap: 8 });
        assert_eq!(e.exit_code(), exit::INCONCLUSIVE);
        let e = CliError::from(ExactError::PrecisionInsufficient);
        assert_eq!(e.exit_code(), exit::INCONCLUSIVE);
        assert_eq!(CliError::from(SpecimenError::GcdNotOne(2)).exit_code(), exit::USAGE);
    }
}
