//! Command-line front end: argument and config parsing, dispatch, and
//! report encoding. [`run`] is the whole program minus process I/O.

pub mod commands;
pub mod config;
pub mod output;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use chrono::{DateTime, SecondsFormat, Utc};
use clap::{Args, Parser, Subcommand};

use commands::{CmdError, Outputs};
use config::{Format, RunConfig};
use report::{Command, Note, RunReport, TOOL};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hadamard-rect",
    version,
    about = "Checks Hermite-Hadamard type identities and bounds on rectangles"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Evaluate both sides of the integral identity.
    Lemma(Flags),
    /// Evaluate a bound (general, corner, midpoint or aggregate form).
    Bound(Flags),
    /// Evaluate the five-term chain.
    Chain(Flags),
    /// Scan the bound margin over a grid, sweep s, compare families.
    Scan(Flags),
    /// Run the acceptance battery.
    Suite(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Flat `key = value` file; flags given on the command line win.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long = "fn", value_name = "EXPR")]
    fn_expr: Option<String>,
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    #[arg(long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    rect: Option<String>,
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// t1|t2|t3|c1_1..c1_4|mid|c2_1..c2_5|c3_1..c3_5|r_c15|r_metu|r_final
    #[arg(long)]
    theorem: Option<String>,
    /// corrected|verbatim
    #[arg(long)]
    mode: Option<String>,
    /// verbatim|sharpened|both
    #[arg(long = "t3-constant")]
    t3_constant: Option<String>,
    #[arg(long, value_name = "N")]
    grid: Option<String>,
    #[arg(long, value_name = "U64")]
    seed: Option<String>,
    /// Comma-separated s values for the scan sweep.
    #[arg(long, value_name = "S1,S2,..", allow_hyphen_values = true)]
    sweep: Option<String>,
    /// Check the s-convexity hypothesis by sampling.
    #[arg(long)]
    certify: bool,
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<String>,
    /// Add the verbatim-normalization identity rows to the suite.
    #[arg(long)]
    include_verbatim_identity: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// json|csv
    #[arg(long)]
    format: Option<String>,
}

impl Flags {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        let opts = [
            ("fn", &self.fn_expr),
            ("catalog", &self.catalog),
            ("rect", &self.rect),
            ("point", &self.point),
            ("s", &self.s),
            ("q", &self.q),
            ("theorem", &self.theorem),
            ("mode", &self.mode),
            ("t3-constant", &self.t3_constant),
            ("grid", &self.grid),
            ("seed", &self.seed),
            ("sweep", &self.sweep),
            ("tol", &self.tol),
            ("out", &self.out),
            ("format", &self.format),
        ];
        for (k, x) in opts {
            if let Some(x) = x {
                v.push((k, x.clone()));
            }
        }
        if self.certify {
            v.push(("certify", "true".into()));
        }
        if self.include_verbatim_identity {
            v.push(("include-verbatim-identity", "true".into()));
        }
        v
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

fn config_error(msg: impl std::fmt::Display) -> Outcome {
    Outcome {
        code: EXIT_CONFIG,
        stdout: Vec::new(),
        stderr: format!("error: {msg}\n"),
    }
}

/// Merges the config file with the flags; flags win.
fn resolve(flags: &Flags) -> Result<RunConfig, String> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    if let Some(path) = &flags.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        pairs = RunConfig::parse_pairs(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    pairs.extend(flags.pairs().into_iter().map(|(k, v)| (k.to_string(), v)));
    RunConfig::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
        .map_err(|e| e.to_string())
}

/// Runs one invocation. `now` stamps the report.
pub fn run<I, T>(args: I, now: DateTime<Utc>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text.into_bytes(),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: Vec::new(),
                    stderr: text,
                }
            };
        }
    };
    let (command, flags) = match &cli.command {
        Sub::Lemma(f) => (Command::Lemma, f),
        Sub::Bound(f) => (Command::Bound, f),
        Sub::Chain(f) => (Command::Chain, f),
        Sub::Scan(f) => (Command::Scan, f),
        Sub::Suite(f) => (Command::Suite, f),
    };
    let cfg = match resolve(flags) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let res = match command {
        Command::Lemma => commands::cmd_lemma(&cfg),
        Command::Bound => commands::cmd_bound(&cfg),
        Command::Chain => commands::cmd_chain(&cfg),
        Command::Scan => commands::cmd_scan(&cfg),
        Command::Suite => commands::cmd_suite(&cfg),
    };
    let Outputs {
        results,
        notes,
        abs_tol,
    } = match res {
        Ok(o) => o,
        Err(CmdError::Config(m)) => return config_error(m),
        Err(CmdError::Check(m)) => {
            return Outcome {
                code: EXIT_FAIL,
                stdout: Vec::new(),
                stderr: format!("evaluation failed: {m}\n"),
            }
        }
    };
    let summary = results.summary(abs_tol);
    let mut stderr: String = commands::describe(&results)
        .into_iter()
        .map(|l| l + "\n")
        .collect();
    stderr.push_str(&format!(
        "summary: {} checks, {} hold, {} violated, {} known typo\n",
        summary.checks, summary.holds, summary.violations, summary.known_typo
    ));
    let body = match cfg.format.unwrap_or_default() {
        Format::Json => {
            let report = RunReport {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                timestamp: now.to_rfc3339_opts(SecondsFormat::Secs, true),
                command,
                config: cfg.clone(),
                results,
                summary,
                notes: notes.into_iter().map(Note::new).collect(),
            };
            output::to_json(&report)
        }
        Format::Csv => {
            let (header, rows) = commands::csv_table(&results, abs_tol);
            output::to_csv(&header, &rows)
        }
    };
    let stdout = match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                return config_error(format!("cannot write {path}: {e}"));
            }
            Vec::new()
        }
        None => body,
    };
    Outcome {
        code: if summary.ok() { EXIT_PASS } else { EXIT_FAIL },
        stdout,
        stderr,
    }
}
