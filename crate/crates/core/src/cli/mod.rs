//! Command-line front end: JSON in, JSON (or plain text) reports out.

mod ops;
pub mod verify;

use crate::arith::DEFAULT_FACTOR_BOUND;
use crate::error::{Error, Result};
use crate::topology::DEFAULT_POSET_CAP;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "ttsupport", version, about = "Supports, spectral spaces and torsion over Euclidean domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: Config,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Predicates and operators on a spectral space.
    Space(Target),
    /// Primes and ideals of a ring.
    Ring(Target),
    /// Associated primes, supports and torsion of a module.
    Module(Target),
    /// Homology and normal forms of a chain complex.
    Complex(Target),
    /// Both supports of a chain complex and their comparison.
    Support(Target),
    /// Run a randomized verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct Target {
    /// Input JSON file, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    /// A predicate to evaluate.
    #[arg(long, conflicts_with = "op")]
    pub check: Option<String>,
    /// An operator to apply.
    #[arg(long)]
    pub op: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Topology,
    Ringmod,
    Complexes,
    Supports,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Config {
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Cases per randomized invariant.
    #[arg(long, global = true, default_value_t = 200)]
    pub cases: usize,
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Trial division bound for factoring ring elements.
    #[arg(long, global = true, default_value_t = DEFAULT_FACTOR_BOUND)]
    pub factor_bound: u64,
    /// Largest finite poset searched exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_POSET_CAP)]
    pub poset_cap: usize,
}

/// Outcome of a command: the report and whether an invariant failed.
pub struct Outcome {
    pub report: Value,
    pub violated: bool,
}

fn read_input(path: &PathBuf) -> Result<Value> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::input(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

/// Runs one command and assembles its report.
pub fn execute(command: &Command, config: &Config) -> Result<Outcome> {
    let (name, request, body) = match command {
        Command::Verify { suite } => {
            let r = verify::run(*suite, config);
            let violated = !r.passed;
            let report = json!({"command": "verify", "config": config, "suite": suite, "result": r});
            return Ok(Outcome { report, violated });
        }
        Command::Space(t) => ("space", t, ops::space as ops::Handler),
        Command::Ring(t) => ("ring", t, ops::ring as ops::Handler),
        Command::Module(t) => ("module", t, ops::module as ops::Handler),
        Command::Complex(t) => ("complex", t, ops::complex as ops::Handler),
        Command::Support(t) => ("support", t, ops::support as ops::Handler),
    };
    let input = read_input(&request.input)?;
    let what = match (&request.check, &request.op) {
        (Some(c), None) => ops::Request::Check(c.clone()),
        (None, Some(o)) => ops::Request::Op(o.clone()),
        (None, None) => ops::Request::Default,
        (Some(_), Some(_)) => return Err(Error::input("give at most one of --check and --op")),
    };
    let (result, violated) = body(&input, &what, config)?;
    let mut report = json!({"command": name, "config": config, "input": request.input.display().to_string()});
    match &what {
        ops::Request::Check(c) => report["check"] = json!(c),
        ops::Request::Op(o) => report["op"] = json!(o),
        ops::Request::Default => {}
    }
    report["result"] = result;
    Ok(Outcome { report, violated })
}

/// Plain-text rendering: one `key: value` line per field of the result.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let result = &report["result"];
    if let Some(invs) = result.get("invariants").and_then(|v| v.as_array()) {
        for inv in invs {
            let status = if inv["failed"] == 0 { "pass" } else { "FAIL" };
            out += &format!("{status}  {}  {}/{}\n", inv["name"].as_str().unwrap_or(""), inv["passed"], inv["cases"]);
            for f in inv["failures"].as_array().into_iter().flatten() {
                out += &format!("      case {} (seed {}): {}\n", f["case"], f["case_seed"], f["message"].as_str().unwrap_or(""));
            }
        }
        out += &format!("{}\n", if result["passed"] == true { "all passed" } else { "failures" });
        return out;
    }
    match result {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::String(s) => out += &format!("{k}: {s}\n"),
                    other => out += &format!("{k}: {other}\n"),
                }
            }
        }
        other => out += &format!("{other}\n"),
    }
    out
}

/// Parses arguments, runs, writes the report and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = execute(&cli.command, &cli.config);
    let (text, code) = match outcome {
        Ok(o) => {
            let text = match cli.config.format {
                Format::Json => serde_json::to_string_pretty(&o.report).expect("reports serialize") + "\n",
                Format::Text => render_text(&o.report),
            };
            (text, if o.violated { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            let report = json!({"error": e.to_string(), "exit_code": e.exit_code()});
            match cli.config.format {
                Format::Json => (serde_json::to_string_pretty(&report).expect("reports serialize") + "\n", e.exit_code()),
                Format::Text => (String::new(), e.exit_code()),
            }
        }
    };
    match &cli.config.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: {}: {e}", p.display());
                return 1;
            }
        }
        None => print!("{text}"),
    }
    code
}
