//! The five subcommands. Each returns its results plus the notes that apply.

use hadamard_core::analysis::{compare_families, scan_gap, sweep_s};
use hadamard_core::bounds::{
    bound_report, chain_evaluate, special_report, Bound, BoundOptions, Family, TheoremId, ABS_TOL,
};
use hadamard_core::identity::lemma_residual;
use hadamard_core::quad::QuadConfig;
use hadamard_core::suite::{run_suite, SuiteConfig};
use hadamard_core::surfaces::{lookup, SamplerConfig};
use hadamard_core::{
    parse_surface, Error, EvalPoint, HolderPair, NormalizationMode, PowerMeanQ, SExponent, Surface,
};

use crate::config::{ConfigError, RunConfig};
use crate::output::{fmt_f64, opt_f64};
use crate::report::{cell_holds, LemmaRow, NoteId, Results, ScanResult};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_GRID: usize = 8;
pub const DEFAULT_Q: f64 = 2.0;
pub const LEMMA_TOL: f64 = 1e-10;
pub const DEFAULT_SWEEP: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub enum CmdError {
    /// Bad input; exit code 2.
    Config(String),
    /// A numerical evaluation failed; exit code 1.
    Check(String),
}

impl From<ConfigError> for CmdError {
    fn from(e: ConfigError) -> Self {
        CmdError::Config(e.0)
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::Eval { .. } | Error::ToleranceNotMet { .. } => CmdError::Check(e.to_string()),
            other => CmdError::Config(other.to_string()),
        }
    }
}

pub struct Outputs {
    pub results: Results,
    pub notes: Vec<NoteId>,
    /// Absolute tolerance used for the summary of scan cells.
    pub abs_tol: f64,
}

fn surface(cfg: &RunConfig) -> Result<Surface, CmdError> {
    match (&cfg.fn_expr, &cfg.catalog) {
        (Some(e), _) => Ok(parse_surface(e)?),
        (None, Some(name)) => Ok(lookup(name)?),
        (None, None) => Err(CmdError::Config("missing --fn or --catalog".into())),
    }
}

fn s_exp(cfg: &RunConfig) -> Result<SExponent, CmdError> {
    Ok(SExponent::new(cfg.s.unwrap_or(1.0))?)
}

fn mode(cfg: &RunConfig) -> NormalizationMode {
    cfg.mode.unwrap_or_default()
}

fn options(cfg: &RunConfig) -> BoundOptions {
    BoundOptions {
        mode: mode(cfg),
        quad: QuadConfig::default(),
        certify: cfg.certify.then(|| SamplerConfig {
            seed: cfg.seed.unwrap_or(DEFAULT_SEED),
            ..SamplerConfig::default()
        }),
        abs_tol: cfg.tol.unwrap_or(ABS_TOL),
    }
}

fn bounds_for(family: Family, cfg: &RunConfig) -> Result<Vec<Bound>, CmdError> {
    let q = cfg.q.unwrap_or(DEFAULT_Q);
    Ok(match family {
        Family::T1 => vec![Bound::T1],
        Family::T2 => vec![Bound::T2 {
            holder: HolderPair::from_q(q)?,
        }],
        Family::T3 => {
            let q = PowerMeanQ::new(q)?;
            cfg.t3_constant
                .unwrap_or_default()
                .constants()
                .into_iter()
                .map(|constant| Bound::T3 { q, constant })
                .collect()
        }
    })
}

fn notes(mode: NormalizationMode, t3: bool) -> Vec<NoteId> {
    let mut v = Vec::new();
    if mode == NormalizationMode::Verbatim {
        v.push(NoteId::ANormalization);
    }
    if t3 {
        v.push(NoteId::T3Constant);
    }
    v
}

fn general_family(cfg: &RunConfig) -> Result<(TheoremId, Family), CmdError> {
    let id = cfg.theorem.unwrap_or(TheoremId::T1);
    match id.family() {
        Some(f) => Ok((id, f)),
        None => Err(CmdError::Config(format!(
            "theorem `{id}` is evaluated by the chain command"
        ))),
    }
}

pub fn cmd_lemma(cfg: &RunConfig) -> Result<Outputs, CmdError> {
    let f = surface(cfg)?;
    let rect = cfg.rect()?;
    let points = match cfg.point(&rect)? {
        Some(p) => vec![p],
        None => rect.interior_grid(3),
    };
    let tol = cfg.tol.unwrap_or(LEMMA_TOL);
    let evaluations = points
        .into_iter()
        .map(|pt| {
            let evaluation = lemma_residual(&f, &rect, pt, mode(cfg), &QuadConfig::default())?;
            Ok(LemmaRow {
                point: pt,
                tol,
                passed: evaluation.residual <= tol,
                evaluation,
            })
        })
        .collect::<Result<Vec<_>, CmdError>>()?;
    Ok(Outputs {
        results: Results::Lemma { evaluations },
        notes: notes(mode(cfg), false),
        abs_tol: tol,
    })
}

pub fn cmd_bound(cfg: &RunConfig) -> Result<Outputs, CmdError> {
    let f = surface(cfg)?;
    let rect = cfg.rect()?;
    let s = s_exp(cfg)?;
    let (id, family) = general_family(cfg)?;
    let opts = options(cfg);
    let general = id == TheoremId::theorem_id(family);
    let point = cfg.point(&rect)?;
    if point.is_some() && !general {
        return Err(CmdError::Config(format!(
            "theorem `{id}` fixes its own point; drop --point"
        )));
    }
    let mut reports = Vec::new();
    for b in bounds_for(family, cfg)? {
        let r = if general {
            bound_report(&b, &f, &rect, point.unwrap_or(rect.midpoint()), s, &opts)?
        } else {
            special_report(id, &b, &f, &rect, s, &opts).expect("non-general id with a family")?
        };
        reports.push(r);
    }
    Ok(Outputs {
        results: Results::Bound { reports },
        notes: notes(opts.mode, family == Family::T3),
        abs_tol: opts.abs_tol,
    })
}

pub fn cmd_chain(cfg: &RunConfig) -> Result<Outputs, CmdError> {
    let f = surface(cfg)?;
    let rect = cfg.rect()?;
    let opts = options(cfg);
    let evaluation = chain_evaluate(&f, &rect, s_exp(cfg)?, &opts)?;
    Ok(Outputs {
        results: Results::Chain { evaluation },
        notes: Vec::new(),
        abs_tol: opts.abs_tol,
    })
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<Outputs, CmdError> {
    let f = surface(cfg)?;
    let rect = cfg.rect()?;
    let s = s_exp(cfg)?;
    let (id, family) = general_family(cfg)?;
    if id != TheoremId::theorem_id(family) {
        return Err(CmdError::Config(format!(
            "scan needs t1, t2 or t3, not `{id}`"
        )));
    }
    let opts = options(cfg);
    let pt: EvalPoint = cfg.point(&rect)?.unwrap_or(rect.midpoint());
    let sweep = cfg.sweep.clone().unwrap_or(DEFAULT_SWEEP.to_vec());
    for v in &sweep {
        SExponent::new(*v)?;
    }
    let grid = cfg.grid.unwrap_or(DEFAULT_GRID);
    let mut gaps = Vec::new();
    let mut sweeps = Vec::new();
    for b in bounds_for(family, cfg)? {
        gaps.push(scan_gap(&b, &f, &rect, s, grid, true, &opts)?);
        sweeps.push(sweep_s(&b, &f, &rect, pt, &sweep, &opts)?);
    }
    let comparison = compare_families(&f, &rect, pt, s, cfg.q.unwrap_or(DEFAULT_Q), &opts)?;
    Ok(Outputs {
        results: Results::Scan(ScanResult {
            gaps,
            sweeps,
            comparison,
        }),
        notes: notes(opts.mode, true),
        abs_tol: opts.abs_tol,
    })
}

pub fn cmd_suite(cfg: &RunConfig) -> Result<Outputs, CmdError> {
    let sc = SuiteConfig {
        tol: cfg.tol,
        include_verbatim_identity: cfg.include_verbatim_identity,
        quad: QuadConfig::default(),
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
    };
    let report = run_suite(&sc);
    Ok(Outputs {
        results: Results::Suite { report },
        notes: vec![NoteId::ANormalization, NoteId::T3Constant],
        abs_tol: cfg.tol.unwrap_or(ABS_TOL),
    })
}

fn opt_str<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// CSV header and rows for a result set.
pub fn csv_table(results: &Results, abs_tol: f64) -> (Vec<&'static str>, Vec<Vec<String>>) {
    match results {
        Results::Lemma { evaluations } => (
            vec![
                "x", "y", "mode", "lhs", "rhs", "residual", "a_term", "tol", "passed",
            ],
            evaluations
                .iter()
                .map(|r| {
                    let e = &r.evaluation;
                    vec![
                        fmt_f64(r.point.x),
                        fmt_f64(r.point.y),
                        e.mode.to_string(),
                        fmt_f64(e.lhs),
                        fmt_f64(e.rhs),
                        fmt_f64(e.residual),
                        fmt_f64(e.a_term),
                        fmt_f64(r.tol),
                        r.passed.to_string(),
                    ]
                })
                .collect(),
        ),
        Results::Bound { reports } => (
            vec![
                "theorem_id",
                "x",
                "y",
                "s",
                "p",
                "q",
                "mode",
                "t3_constant",
                "lhs",
                "rhs",
                "margin",
                "tol",
                "holds",
                "hypothesis_certified",
            ],
            reports
                .iter()
                .map(|r| {
                    let p = &r.params;
                    vec![
                        r.theorem_id.to_string(),
                        opt_f64(p.pt.map(|q| q.x)),
                        opt_f64(p.pt.map(|q| q.y)),
                        fmt_f64(p.s),
                        opt_f64(p.p),
                        opt_f64(p.q),
                        p.mode.to_string(),
                        opt_str(p.t3_constant),
                        fmt_f64(r.lhs),
                        fmt_f64(r.rhs),
                        fmt_f64(r.margin),
                        fmt_f64(r.tol),
                        r.holds.to_string(),
                        opt_str(r.hypothesis_certified),
                    ]
                })
                .collect(),
        ),
        Results::Chain { evaluation: e } => (
            vec![
                "s",
                "e0",
                "e1",
                "e2",
                "e3",
                "e4",
                "monotone",
                "tol",
                "hypothesis_certified",
            ],
            vec![vec![
                fmt_f64(e.s),
                fmt_f64(e.e0),
                fmt_f64(e.e1),
                fmt_f64(e.e2),
                fmt_f64(e.e3),
                fmt_f64(e.e4),
                e.monotone.to_string(),
                fmt_f64(e.tol),
                opt_str(e.hypothesis_certified),
            ]],
        ),
        Results::Scan(s) => (
            vec![
                "theorem_id",
                "t3_constant",
                "x",
                "y",
                "lhs",
                "rhs",
                "margin",
                "holds",
                "error",
            ],
            s.gaps
                .iter()
                .flat_map(|g| {
                    g.grid.iter().map(move |c| {
                        vec![
                            g.params.theorem_id.to_string(),
                            opt_str(g.params.t3_constant),
                            fmt_f64(c.x),
                            fmt_f64(c.y),
                            fmt_f64(c.lhs),
                            fmt_f64(c.rhs),
                            fmt_f64(c.margin),
                            cell_holds(c, abs_tol).to_string(),
                            c.error.clone().unwrap_or_default(),
                        ]
                    })
                })
                .collect(),
        ),
        Results::Suite { report } => (
            vec![
                "criterion",
                "name",
                "status",
                "cases",
                "failures",
                "worst",
                "tolerance",
                "detail",
            ],
            report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.criterion.to_string(),
                        c.name.clone(),
                        status_str(c.status).to_string(),
                        c.cases.to_string(),
                        c.failures.to_string(),
                        fmt_f64(c.worst),
                        fmt_f64(c.tolerance),
                        c.detail.clone(),
                    ]
                })
                .collect(),
        ),
    }
}

pub fn status_str(s: hadamard_core::suite::Status) -> &'static str {
    use hadamard_core::suite::Status;
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::KnownTypo => "KNOWN_TYPO",
    }
}

fn label(id: TheoremId, c: Option<hadamard_core::quad::T3Constant>) -> String {
    match c {
        Some(c) => format!("{id} ({c})"),
        None => id.to_string(),
    }
}

/// Human-readable lines for stderr.
pub fn describe(results: &Results) -> Vec<String> {
    match results {
        Results::Lemma { evaluations } => evaluations
            .iter()
            .map(|r| {
                format!(
                    "lemma ({}, {}): lhs {} rhs {} residual {:e} {}",
                    r.point.x,
                    r.point.y,
                    r.evaluation.lhs,
                    r.evaluation.rhs,
                    r.evaluation.residual,
                    if r.passed { "ok" } else { "FAIL" }
                )
            })
            .collect(),
        Results::Bound { reports } => reports
            .iter()
            .map(|r| {
                format!(
                    "{}: lhs {} rhs {} margin {:e} {}",
                    label(r.theorem_id, r.params.t3_constant),
                    r.lhs,
                    r.rhs,
                    r.margin,
                    if r.holds { "holds" } else { "VIOLATED" }
                )
            })
            .collect(),
        Results::Chain { evaluation: e } => {
            vec![format!(
                "chain {:?}: {}",
                e.values(),
                if e.monotone {
                    "monotone"
                } else {
                    "NOT monotone"
                }
            )]
        }
        Results::Scan(s) => s
            .gaps
            .iter()
            .map(|g| {
                format!(
                    "scan {}: {} cells, min margin {:e} at ({}, {}), {} failed",
                    label(g.params.theorem_id, g.params.t3_constant),
                    g.grid.len(),
                    g.min_margin,
                    g.argmin.x,
                    g.argmin.y,
                    g.failed_cells
                )
            })
            .collect(),
        Results::Suite { report } => report
            .checks
            .iter()
            .map(|c| {
                format!(
                    "[{}] {:<10} {:<38} cases {:>6} failures {:>4} worst {:>10.3e} tol {:.0e}",
                    c.criterion,
                    status_str(c.status),
                    c.name,
                    c.cases,
                    c.failures,
                    c.worst,
                    c.tolerance
                )
            })
            .collect(),
    }
}
