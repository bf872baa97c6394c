//! Command-line front end.
//!
//! Every command reads a fan (`{"rays": [[x,y], ...]}`) and optionally a
//! group (`{"generators": [[[a,b],[c,d]], ...]}`), runs one stage of the
//! pipeline and prints either a short summary or, with `--json`, a report.
//! Exit codes: 0 verified, 1 a certificate failed, 2 invalid input.

mod report;

use std::ffi::OsString;
use std::fmt::Debug;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::fan::{CompleteFan2D, FanJson};
use crate::symmetry::{SymmetryGroup, UnimodularMatrix};

pub use report::{pipeline, PipelineReport};

pub const SCHEMA: &str = "toric-surface-lab/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "toric-surface-lab",
    version,
    about = "Equivariant toric surface toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Fan JSON file.
    #[arg(long, global = true)]
    pub fan: Option<PathBuf>,
    /// Group JSON file; the trivial group when absent.
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    /// Print a JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Coefficient bound for the line-bundle basis search.
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    /// Corpus seed for `self-test`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Block order of the collection.
    #[arg(long, global = true, value_enum, default_value_t = Order::Forward)]
    pub order: Order,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check a fan and print its self-intersection numbers.
    Validate,
    /// Automorphism group of the fan.
    Aut,
    /// Conjugacy class of the group in GL(2,Z).
    ClassifyGroup,
    /// Run the equivariant minimal model program.
    Minimalize,
    /// Minimal model and its label.
    Classify,
    /// Picard lattice and the K0 presentation certificate.
    K0Verify,
    /// Standard permutation basis, and a bounded search with --bound.
    Basis,
    /// Full exceptional collection with its certificate.
    Collection,
    /// Decomposition into separable algebras.
    Decompose,
    /// Full pipeline.
    Report,
    /// Full pipeline over the generated corpus.
    SelfTest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Aut => "aut",
            Command::ClassifyGroup => "classify-group",
            Command::Minimalize => "minimalize",
            Command::Classify => "classify",
            Command::K0Verify => "k0-verify",
            Command::Basis => "basis",
            Command::Collection => "collection",
            Command::Decompose => "decompose",
            Command::Report => "report",
            Command::SelfTest => "self-test",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Forward,
    Reversed,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    generators: Vec<[[i64; 2]; 2]>,
}

/// A failed command: invalid input, reported with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub kind: String,
    pub message: String,
    pub location: Option<Value>,
}

impl InputError {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        InputError {
            kind: kind.to_string(),
            message: message.into(),
            location: None,
        }
    }

    /// From a library error, named after its innermost variant.
    pub fn from_error<E: Debug + std::fmt::Display>(e: &E) -> Self {
        InputError::new(&error_name(e), e.to_string())
    }

    fn to_json(&self) -> Value {
        json!({ "kind": self.kind, "message": self.message, "location": self.location })
    }
}

/// Name of the error variant, looking through transparent wrappers.
pub fn error_name<E: Debug>(e: &E) -> String {
    const WRAPPERS: [&str; 6] = [
        "Fan",
        "Symmetry",
        "Minimal",
        "Grothendieck",
        "Derived",
        "Motivic",
    ];
    let debug = format!("{e:?}");
    let mut rest = debug.as_str();
    loop {
        let end = rest
            .find(|c: char| !c.is_alphanumeric())
            .unwrap_or(rest.len());
        let name = &rest[..end];
        if WRAPPERS.contains(&name) && rest[end..].starts_with('(') {
            rest = &rest[end + 1..];
        } else {
            return name.to_string();
        }
    }
}

/// Outcome of a command before printing.
pub struct Outcome {
    pub code: i32,
    pub result: Value,
    pub summary: Vec<String>,
}

impl Outcome {
    fn ok(result: Value, summary: Vec<String>) -> Self {
        Outcome {
            code: EXIT_OK,
            result,
            summary,
        }
    }

    fn checked(passed: bool, result: Value, summary: Vec<String>) -> Self {
        Outcome {
            code: if passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            },
            result,
            summary,
        }
    }
}

pub struct Inputs {
    pub fan: Option<CompleteFan2D>,
    pub group: SymmetryGroup,
    digests: Value,
}

fn read(path: &Path) -> Result<(String, String), InputError> {
    let bytes = std::fs::read(path)
        .map_err(|e| InputError::new("Io", format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text =
        String::from_utf8(bytes).map_err(|e| InputError::new("MalformedJson", e.to_string()))?;
    Ok((text, digest))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &Path) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError {
        kind: "MalformedJson".to_string(),
        message: format!("{}: {e}", path.display()),
        location: Some(
            json!({ "file": path.display().to_string(), "line": e.line(), "column": e.column() }),
        ),
    })
}

pub fn load_fan(path: &Path) -> Result<(CompleteFan2D, String), InputError> {
    let (text, digest) = read(path)?;
    let raw: FanJson = parse_json(&text, path)?;
    let fan = CompleteFan2D::try_from(raw).map_err(|e| InputError::from_error(&e))?;
    Ok((fan, digest))
}

pub fn load_group(path: &Path) -> Result<(SymmetryGroup, String), InputError> {
    let (text, digest) = read(path)?;
    let raw: GroupJson = parse_json(&text, path)?;
    let generators = raw
        .generators
        .into_iter()
        .map(UnimodularMatrix::new)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| InputError::from_error(&e))?;
    let g = SymmetryGroup::generated_by(&generators).map_err(|e| InputError::from_error(&e))?;
    Ok((g, digest))
}

fn load_inputs(cli: &Cli) -> Result<Inputs, InputError> {
    let mut digests = serde_json::Map::new();
    let fan = match &cli.fan {
        Some(p) => {
            let (fan, d) = load_fan(p)?;
            digests.insert(
                "fan".into(),
                json!({ "path": p.display().to_string(), "sha256": d }),
            );
            Some(fan)
        }
        None => None,
    };
    let group = match &cli.group {
        Some(p) => {
            let (g, d) = load_group(p)?;
            digests.insert(
                "group".into(),
                json!({ "path": p.display().to_string(), "sha256": d }),
            );
            g
        }
        None => SymmetryGroup::trivial(),
    };
    if let Some(f) = &fan {
        group.attach(f).map_err(|e| InputError::from_error(&e))?;
    }
    Ok(Inputs {
        fan,
        group,
        digests: Value::Object(digests),
    })
}

fn envelope(cli: &Cli, digests: Value, status: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(cli.command.name()));
    m.insert("inputs".into(), digests);
    m.insert("status".into(), json!(status));
    m
}

/// Parses arguments, runs the command and writes the output.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = load_inputs(cli).and_then(|inputs| {
        let digests = inputs.digests.clone();
        report::dispatch(cli, &inputs).map(|o| (o, digests))
    });
    match outcome {
        Ok((o, digests)) => {
            if cli.json {
                let status = if o.code == EXIT_OK {
                    "ok"
                } else {
                    "verification_failed"
                };
                let mut m = envelope(cli, digests, status);
                m.insert("result".into(), o.result);
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&Value::Object(m)).expect("report serialises")
                );
            } else {
                for line in &o.summary {
                    let _ = writeln!(out, "{line}");
                }
            }
            o.code
        }
        Err(e) => {
            if cli.json {
                let mut m = envelope(cli, json!({}), "invalid_input");
                m.insert("error".into(), e.to_json());
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&Value::Object(m)).expect("report serialises")
                );
            }
            let _ = writeln!(err, "error[{}]: {}", e.kind, e.message);
            EXIT_INVALID_INPUT
        }
    }
}
