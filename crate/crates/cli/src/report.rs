//! The JSON document every command writes.

use hadamard_core::analysis::{GapSurface, SweepTable};
use hadamard_core::bounds::{BoundReport, ChainEvaluation};
use hadamard_core::identity::LemmaEvaluation;
use hadamard_core::suite::SuiteReport;
use hadamard_core::EvalPoint;
use serde::Serialize;

use crate::config::RunConfig;

pub const TOOL: &str = "hadamard-rect";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Lemma,
    Bound,
    Chain,
    Scan,
    Suite,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaRow {
    pub point: EvalPoint,
    pub tol: f64,
    pub passed: bool,
    pub evaluation: LemmaEvaluation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub gaps: Vec<GapSurface>,
    pub sweeps: Vec<SweepTable>,
    pub comparison: Vec<BoundReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Results {
    Lemma { evaluations: Vec<LemmaRow> },
    Bound { reports: Vec<BoundReport> },
    Chain { evaluation: ChainEvaluation },
    Scan(ScanResult),
    Suite { report: SuiteReport },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub holds: usize,
    pub violations: usize,
    pub known_typo: usize,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoteId {
    ANormalization,
    T3Constant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Note {
    pub id: NoteId,
    pub text: &'static str,
}

impl Note {
    pub fn new(id: NoteId) -> Note {
        let text = match id {
            NoteId::ANormalization => {
                "The corner term A is the corner-weighted sum of f with no division by the area. \
                 Verbatim mode divides it by the area, so the identity only holds there when the area is 1."
            }
            NoteId::T3Constant => {
                "The power-mean bound has two leading constants: verbatim 2^(2-2/q) and sharpened 2^(2/q-2). \
                 They agree at q = 1; for q > 1 the verbatim value is larger."
            }
        };
        Note { id, text }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub timestamp: String,
    pub command: Command,
    pub config: RunConfig,
    pub results: Results,
    pub summary: Summary,
    pub notes: Vec<Note>,
}

fn tally(flags: impl IntoIterator<Item = bool>) -> Summary {
    let (mut holds, mut violations) = (0, 0);
    for ok in flags {
        if ok {
            holds += 1;
        } else {
            violations += 1;
        }
    }
    Summary {
        checks: holds + violations,
        holds,
        violations,
        known_typo: 0,
    }
}

/// Whether a grid cell satisfies its bound: evaluated and within tolerance.
pub fn cell_holds(cell: &hadamard_core::analysis::GapCell, abs_tol: f64) -> bool {
    let tol = abs_tol + hadamard_core::bounds::REL_TOL * cell.rhs.abs();
    cell.error.is_none() && cell.margin >= -tol
}

impl Results {
    pub fn summary(&self, abs_tol: f64) -> Summary {
        match self {
            Results::Lemma { evaluations } => tally(evaluations.iter().map(|r| r.passed)),
            Results::Bound { reports } => tally(reports.iter().map(|r| r.holds)),
            Results::Chain { evaluation } => tally([evaluation.monotone]),
            Results::Scan(s) => tally(
                s.gaps
                    .iter()
                    .flat_map(|g| g.grid.iter().map(|c| cell_holds(c, abs_tol)))
                    .chain(s.sweeps.iter().flat_map(|t| t.rows.iter().map(|r| r.holds)))
                    .chain(s.comparison.iter().map(|r| r.holds)),
            ),
            Results::Suite { report } => Summary {
                checks: report.checks.len(),
                holds: report.passed,
                violations: report.failed,
                known_typo: report.known_typo,
            },
        }
    }
}
