//! `heartforge`: command-line front end for the heart engine.

mod commands;
mod golden;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heartforge_core::algebra::QuiverPresentation;
use heartforge_core::decomp::seed_from_env;
use heartforge_core::torsion::CorpusConfig;
use heartforge_core::{Field, FieldSpec, Fp, Rationals, Status};
use serde_json::Value;
use thiserror::Error;

const EXIT_REFUTED: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input error: {0}")]
    Input(String),
}

impl From<heartforge_core::Error> for CliError {
    fn from(e: heartforge_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// A command result: a JSON report and, for decision commands, a verdict status.
pub struct Outcome {
    pub command: &'static str,
    pub report: Value,
    pub status: Option<Status>,
}

impl Outcome {
    pub fn new(command: &'static str, report: Value, status: Option<Status>) -> Self {
        Outcome { command, report, status }
    }
}

#[derive(Parser, Debug)]
#[command(name = "heartforge", version, about = "Decide whether the heart of a torsion pair is a module category")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Scalar field: a prime p or Q; defaults to the field of the algebra file, or GF(101).
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Seed for randomized decompositions; HEARTFORGE_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Depth of the sample corpus used for class-level conditions.
    #[arg(long, global = true, default_value_t = 1)]
    corpus_depth: usize,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an algebra and report its invariants; optionally validate a module file.
    AlgebraCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Classify a torsion pair.
    Torsion {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        torsion: PathBuf,
    },
    /// Build a progenerator of the heart and check the standard conditions.
    HeartProgenerator {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        torsion: PathBuf,
    },
    /// Endomorphism ring of the progenerator of the heart.
    HeartEndring {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        torsion: PathBuf,
    },
    /// Whether the sum of stalk complexes is a progenerator (TTF pairs only).
    StalkCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        torsion: PathBuf,
    },
    /// HKM criterion for a two-term complex of projectives.
    HkmCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        torsion: PathBuf,
        #[arg(long)]
        complex: PathBuf,
    },
    /// Classical 1-tilting test of a module, or tilting test of a two-term complex.
    TiltCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, conflicts_with = "complex")]
        module: Option<PathBuf>,
        #[arg(long, requires = "torsion")]
        complex: Option<PathBuf>,
        #[arg(long)]
        torsion: Option<PathBuf>,
    },
    /// Trivial-extension construction of a non-tilting pair with a stalk progenerator.
    TrivextBuild {
        #[arg(long)]
        algebra: PathBuf,
        /// Name of a source vertex.
        #[arg(long)]
        source_vertex: String,
        /// Compare with the algebra presented by the extended quiver.
        #[arg(long)]
        check_presentation: bool,
    },
    /// Run a golden example identifier: 8.1, 8.2a, 8.2b, 8.2c or 8.3-kronecker.
    ExamplesRun {
        name: String,
        /// Number of vertices for 8.1.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    match s {
        "Q" | "q" | "rational" => Ok(FieldSpec::Rational),
        _ => {
            let p: u64 = s.parse().map_err(|_| format!("{s} is neither a prime nor Q"))?;
            Fp::new(p).map_err(|e| e.to_string())?;
            Ok(FieldSpec::Prime(p))
        }
    }
}

impl Command {
    fn algebra_path(&self) -> Option<&PathBuf> {
        match self {
            Command::AlgebraCheck { algebra, .. }
            | Command::Torsion { algebra, .. }
            | Command::HeartProgenerator { algebra, .. }
            | Command::HeartEndring { algebra, .. }
            | Command::StalkCheck { algebra, .. }
            | Command::HkmCheck { algebra, .. }
            | Command::TiltCheck { algebra, .. }
            | Command::TrivextBuild { algebra, .. } => Some(algebra),
            Command::ExamplesRun { .. } => None,
        }
    }
}

fn dispatch<K: Field>(
    k: &K,
    cmd: &Command,
    pres: Option<&QuiverPresentation>,
    cfg: CorpusConfig,
) -> Result<Outcome, CliError> {
    let pres = || pres.ok_or_else(|| CliError::Usage("missing --algebra".into()));
    match cmd {
        Command::AlgebraCheck { module, .. } => commands::algebra_check(k, pres()?, module.as_deref()),
        Command::Torsion { torsion, .. } => commands::torsion(k, pres()?, torsion, cfg),
        Command::HeartProgenerator { torsion, .. } => commands::heart_progenerator(k, pres()?, torsion, cfg),
        Command::HeartEndring { torsion, .. } => commands::heart_endring(k, pres()?, torsion, cfg),
        Command::StalkCheck { torsion, .. } => commands::stalk_check(k, pres()?, torsion, cfg),
        Command::HkmCheck { torsion, complex, .. } => commands::hkm(k, pres()?, torsion, complex, cfg),
        Command::TiltCheck { module, complex, torsion, .. } => {
            let c = complex.as_deref().zip(torsion.as_deref());
            commands::tilt(k, pres()?, module.as_deref(), c, cfg)
        }
        Command::TrivextBuild { source_vertex, check_presentation, .. } => {
            commands::trivext(k, pres()?, source_vertex, *check_presentation, cfg)
        }
        Command::ExamplesRun { name, n } => golden::run(k, name, *n, cfg),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let pres = cli.command.algebra_path().map(|p| io::read_presentation(p)).transpose()?;
    let file_field = pres.as_ref().map(|p| p.field.spec()).transpose()?;
    let spec = cli.common.field.or(file_field).unwrap_or(FieldSpec::Prime(101));
    let pres = pres.map(|mut p| {
        p.field = heartforge_core::algebra::FieldJson::from_spec(spec);
        p
    });
    let cfg = CorpusConfig { depth: cli.common.corpus_depth, seed: seed_from_env(cli.common.seed) };
    match spec {
        FieldSpec::Prime(p) => dispatch(&Fp::new(p)?, &cli.command, pres.as_ref(), cfg),
        FieldSpec::Rational => dispatch(&Rationals, &cli.command, pres.as_ref(), cfg),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render(val, indent + 1, out);
                    }
                    Value::Array(items) if key == "checks" => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        for c in items {
                            let mark = if c["ok"] == Value::Bool(true) { "ok  " } else { "FAIL" };
                            out.push_str(&format!(
                                "{pad}  {mark} {}: expected {}, computed {}\n",
                                scalar(&c["quantity"]),
                                scalar(&c["expected"]),
                                scalar(&c["computed"])
                            ));
                        }
                    }
                    Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        for (i, item) in items.iter().enumerate() {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            render(item, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(val))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Failing golden checks as a diff.
fn diff(report: &Value) -> String {
    let mut out = String::new();
    if let Some(Value::Array(checks)) = report.get("checks") {
        for c in checks.iter().filter(|c| c["ok"] == Value::Bool(false)) {
            out.push_str(&format!(
                "- {}: {}\n+ {}: {}\n",
                scalar(&c["quantity"]),
                scalar(&c["expected"]),
                scalar(&c["quantity"]),
                scalar(&c["computed"])
            ));
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if cli.common.json {
                println!("{}", serde_json::to_string_pretty(&outcome.report).expect("serializable"));
            } else {
                let mut text = format!("{}\n", outcome.command);
                render(&outcome.report, 1, &mut text);
                if let Some(s) = outcome.status {
                    text.push_str(&format!("status: {s}\n"));
                }
                let d = diff(&outcome.report);
                if !d.is_empty() {
                    text.push_str("diff (expected -, computed +):\n");
                    text.push_str(&d);
                }
                print!("{text}");
            }
            ExitCode::from(match outcome.status {
                None | Some(Status::Proven) => 0,
                Some(Status::Refuted) => EXIT_REFUTED,
                Some(Status::Unknown) => EXIT_UNKNOWN,
            })
        }
        Err(e) => {
            eprintln!("heartforge: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Input(_) => EXIT_DATA,
            })
        }
    }
}
