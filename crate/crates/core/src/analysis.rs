//! Grid scans of the bound margin, parameter sweeps in `s`, and side-by-side
//! comparison of the bound families at one point.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    bound_report, certify_hypothesis, Bound, BoundOptions, BoundReport, TheoremId,
};
use crate::domain::{EvalPoint, HolderPair, PowerMeanQ, Rect, SExponent};
use crate::error::{Error, Result};
use crate::quad::T3Constant;
use crate::surfaces::Surface;

/// Coordinate-descent iterations after the grid scan.
pub const REFINE_ITERS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapCell {
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Set when the cell could not be evaluated; the numbers are then NaN.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapParams {
    pub theorem_id: TheoremId,
    pub s: f64,
    pub q: Option<f64>,
    pub t3_constant: Option<T3Constant>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub x: f64,
    pub y: f64,
    pub margin: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSurface {
    pub grid_n: usize,
    /// `(grid_n + 1)^2` cells, row-major with `x` in the outer loop.
    pub grid: Vec<GapCell>,
    pub min_margin: f64,
    pub argmin: EvalPoint,
    pub params: GapParams,
    pub failed_cells: usize,
    pub hypothesis_certified: Option<bool>,
    pub refinement: Option<Refinement>,
}

fn gap_params(bound: &Bound, s: SExponent) -> GapParams {
    let (q, t3_constant) = match bound {
        Bound::T1 => (None, None),
        Bound::T2 { holder } => (Some(holder.q), None),
        Bound::T3 { q, constant } => (Some(q.get()), Some(*constant)),
    };
    GapParams {
        theorem_id: TheoremId::theorem_id(bound.family()),
        s: s.get(),
        q,
        t3_constant,
    }
}

fn margin_at(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    bound_report(bound, f, rect, pt, s, opts)
}

/// Evaluates the general bound on the `(grid_n + 1)^2` lattice of `rect`.
/// Cell failures are recorded in the grid rather than aborting the scan.
pub fn scan_gap(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    grid_n: usize,
    refine: bool,
    opts: &BoundOptions,
) -> Result<GapSurface> {
    if grid_n < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid_n = {grid_n} must be at least 2"
        )));
    }
    let hypothesis_certified = opts
        .certify
        .as_ref()
        .map(|cfg| certify_hypothesis(f, rect, s, bound.q(), cfg))
        .transpose()?;
    let cell_opts = BoundOptions {
        certify: None,
        ..*opts
    };
    let grid: Vec<GapCell> = rect
        .lattice(grid_n)
        .into_par_iter()
        .map(|pt| match margin_at(bound, f, rect, pt, s, &cell_opts) {
            Ok(r) => GapCell {
                x: pt.x,
                y: pt.y,
                lhs: r.lhs,
                rhs: r.rhs,
                margin: r.margin,
                error: None,
            },
            Err(e) => GapCell {
                x: pt.x,
                y: pt.y,
                lhs: f64::NAN,
                rhs: f64::NAN,
                margin: f64::NAN,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let mut best: Option<&GapCell> = None;
    for cell in grid.iter().filter(|c| c.error.is_none()) {
        if best.is_none_or(|b| cell.margin < b.margin) {
            best = Some(cell);
        }
    }
    let failed_cells = grid.iter().filter(|c| c.error.is_some()).count();
    let (min_margin, argmin) = match best {
        Some(c) => (c.margin, EvalPoint::new(c.x, c.y)),
        None => (f64::NAN, rect.midpoint()),
    };
    let refinement = if refine && best.is_some() {
        Some(refine_min(
            bound, f, rect, s, argmin, min_margin, grid_n, &cell_opts,
        ))
    } else {
        None
    };
    Ok(GapSurface {
        grid_n,
        grid,
        min_margin,
        argmin,
        params: gap_params(bound, s),
        failed_cells,
        hypothesis_certified,
        refinement,
    })
}

/// Coordinate descent from the grid minimum, halving the step whenever no
/// axis move improves the margin.
#[allow(clippy::too_many_arguments)]
fn refine_min(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    start: EvalPoint,
    start_margin: f64,
    grid_n: usize,
    opts: &BoundOptions,
) -> Refinement {
    let mut pt = start;
    let mut best = start_margin;
    let mut hx = rect.width() / grid_n as f64;
    let mut hy = rect.height() / grid_n as f64;
    for _ in 0..REFINE_ITERS {
        let candidates = [
            EvalPoint::new((pt.x - hx).max(rect.a()), pt.y),
            EvalPoint::new((pt.x + hx).min(rect.b()), pt.y),
            EvalPoint::new(pt.x, (pt.y - hy).max(rect.c())),
            EvalPoint::new(pt.x, (pt.y + hy).min(rect.d())),
        ];
        let mut moved = false;
        for c in candidates {
            if let Ok(r) = margin_at(bound, f, rect, c, s, opts) {
                if r.margin < best {
                    best = r.margin;
                    pt = c;
                    moved = true;
                }
            }
        }
        if !moved {
            hx *= 0.5;
            hy *= 0.5;
        }
    }
    Refinement {
        x: pt.x,
        y: pt.y,
        margin: best,
        iterations: REFINE_ITERS,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
    Mixed,
    /// Fewer than two rows.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<BoundReport>,
    /// How the rhs moves as `s` increases, in the given order.
    pub rhs_trend: Trend,
}

fn trend(values: &[f64]) -> Trend {
    if values.len() < 2 {
        return Trend::Undetermined;
    }
    let steps: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    if steps.iter().all(|d| *d == 0.0) {
        Trend::Constant
    } else if steps.iter().all(|d| *d >= 0.0) {
        Trend::Increasing
    } else if steps.iter().all(|d| *d <= 0.0) {
        Trend::Decreasing
    } else {
        Trend::Mixed
    }
}

pub fn sweep_s(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s_values: &[f64],
    opts: &BoundOptions,
) -> Result<SweepTable> {
    let rows = s_values
        .iter()
        .map(|&s| bound_report(bound, f, rect, pt, SExponent::new(s)?, opts))
        .collect::<Result<Vec<_>>>()?;
    let rhs: Vec<f64> = rows.iter().map(|r| r.rhs).collect();
    Ok(SweepTable {
        rhs_trend: trend(&rhs),
        rows,
    })
}

/// T1, T2 (when `q > 1`), and T3 in both constant modes at one point.
pub fn compare_families(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
    q: f64,
    opts: &BoundOptions,
) -> Result<Vec<BoundReport>> {
    let mut bounds = vec![Bound::T1];
    if q > 1.0 {
        bounds.push(Bound::T2 {
            holder: HolderPair::from_q(q)?,
        });
    }
    let pq = PowerMeanQ::new(q)?;
    bounds.extend(T3Constant::BOTH.map(|constant| Bound::T3 { q: pq, constant }));
    bounds
        .iter()
        .map(|b| bound_report(b, f, rect, pt, s, opts))
        .collect()
}
