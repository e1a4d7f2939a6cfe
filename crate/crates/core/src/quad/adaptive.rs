//! Adaptive Gauss-Legendre integration in one and two dimensions.
//!
//! Each cell is integrated with the configured order and with half that
//! order; the difference is the cell's error estimate. Cells whose estimate
//! exceeds their share of the tolerance are bisected (1D) or split into
//! quadrants (2D) until the depth limit is reached. A result is accepted
//! when every cell met its share, or when the summed estimate is within
//! `abs_tol` anyway.
//!
//! One-dimensional integrals run through the smoothstep substitution
//! `t = lo + (hi - lo)(3τ² - 2τ³)`, which flattens algebraic endpoint
//! singularities such as `√t` and keeps polynomials of degree <= 8 exact.

use serde::{Deserialize, Serialize};

use super::gauss::{rule, GaussLegendre};
use crate::domain::Rect;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub gl_order: usize,
    pub max_subdiv: u32,
    pub abs_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            gl_order: 32,
            max_subdiv: 10,
            abs_tol: 1e-11,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.gl_order < 2 || !(self.abs_tol > 0.0) {
            return Err(Error::BadExponent(format!(
                "invalid quadrature config: gl_order = {}, abs_tol = {}",
                self.gl_order, self.abs_tol
            )));
        }
        Ok(())
    }

    fn rules(&self) -> (std::sync::Arc<GaussLegendre>, std::sync::Arc<GaussLegendre>) {
        (rule(self.gl_order), rule((self.gl_order / 2).max(1)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub err_estimate: f64,
    /// Deepest subdivision level used (0 = a single cell).
    pub subdivisions: u32,
    pub exact: bool,
}

impl IntegralResult {
    pub fn exact(value: f64) -> Self {
        IntegralResult {
            value,
            err_estimate: 0.0,
            subdivisions: 0,
            exact: true,
        }
    }
}

// Roundoff floor on the per-cell error estimate, relative to the sum of |w f|.
const ROUNDOFF_FACTOR: f64 = 64.0 * f64::EPSILON;

struct Acc {
    value: f64,
    err: f64,
    depth: u32,
    converged: bool,
    floor: f64,
}

impl Acc {
    fn new() -> Self {
        Acc {
            value: 0.0,
            err: 0.0,
            depth: 0,
            converged: true,
            floor: 0.0,
        }
    }

    fn finish(self, cfg: &QuadConfig) -> Result<IntegralResult> {
        if !self.value.is_finite() {
            return Err(Error::ToleranceNotMet {
                value: self.value,
                err_estimate: f64::INFINITY,
            });
        }
        if self.converged || self.err <= cfg.abs_tol.max(self.floor) {
            Ok(IntegralResult {
                value: self.value,
                err_estimate: self.err,
                subdivisions: self.depth,
                exact: false,
            })
        } else {
            Err(Error::ToleranceNotMet {
                value: self.value,
                err_estimate: self.err,
            })
        }
    }
}

/// `∫_lo^hi g`, for an infallible integrand.
pub fn integrate_1d<F: Fn(f64) -> f64>(
    g: F,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    try_integrate_1d(|t| Ok(g(t)), lo, hi, cfg)
}

/// `∫_lo^hi g` for an integrand that may fail; the first failure aborts.
pub fn try_integrate_1d<F: Fn(f64) -> Result<f64>>(
    g: F,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    cfg.validate()?;
    if lo == hi {
        return Ok(IntegralResult::exact(0.0));
    }
    if lo > hi {
        let mut r = try_integrate_1d(g, hi, lo, cfg)?;
        r.value = -r.value;
        return Ok(r);
    }
    let (fine, coarse) = cfg.rules();
    let mut acc = Acc::new();
    let len = hi - lo;
    let h = |tau: f64| -> Result<f64> {
        let t = lo + len * tau * tau * (3.0 - 2.0 * tau);
        Ok(g(t)? * len * 6.0 * tau * (1.0 - tau))
    };
    cell_1d(&h, &fine, &coarse, 0.0, 1.0, 0, 1.0, cfg, &mut acc)?;
    acc.finish(cfg)
}

#[allow(clippy::too_many_arguments)]
fn cell_1d<F: Fn(f64) -> Result<f64>>(
    g: &F,
    fine: &GaussLegendre,
    coarse: &GaussLegendre,
    lo: f64,
    hi: f64,
    depth: u32,
    total: f64,
    cfg: &QuadConfig,
    acc: &mut Acc,
) -> Result<()> {
    let (v_fine, mag) = apply_1d(g, fine, lo, hi)?;
    let (v_coarse, _) = apply_1d(g, coarse, lo, hi)?;
    let err = (v_fine - v_coarse).abs();
    let local_tol = (cfg.abs_tol * (hi - lo) / total).max(ROUNDOFF_FACTOR * mag);
    if err <= local_tol || depth >= cfg.max_subdiv {
        if err > local_tol {
            acc.converged = false;
        }
        acc.value += v_fine;
        acc.err += err;
        acc.floor += ROUNDOFF_FACTOR * mag;
        acc.depth = acc.depth.max(depth);
        return Ok(());
    }
    let mid = 0.5 * (lo + hi);
    cell_1d(g, fine, coarse, lo, mid, depth + 1, total, cfg, acc)?;
    cell_1d(g, fine, coarse, mid, hi, depth + 1, total, cfg, acc)
}

fn apply_1d<F: Fn(f64) -> Result<f64>>(
    g: &F,
    r: &GaussLegendre,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64)> {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut acc = 0.0;
    let mut mag = 0.0;
    for (x, w) in r.nodes.iter().zip(&r.weights) {
        let term = w * g(mid + half * x)?;
        acc += term;
        mag += term.abs();
    }
    Ok((acc * half, mag * half.abs()))
}

/// `∫∫_rect f(u, v) du dv`, for an infallible integrand.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    rect: &Rect,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    try_integrate_2d(|u, v| Ok(f(u, v)), rect, cfg)
}

pub fn try_integrate_2d<F: Fn(f64, f64) -> Result<f64>>(
    f: F,
    rect: &Rect,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    integrate_box(f, (rect.a(), rect.b()), (rect.c(), rect.d()), cfg)
}

/// Same as [`try_integrate_2d`] on an arbitrary, possibly degenerate, box.
pub fn integrate_box<F: Fn(f64, f64) -> Result<f64>>(
    f: F,
    xs: (f64, f64),
    ys: (f64, f64),
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    cfg.validate()?;
    let area = (xs.1 - xs.0) * (ys.1 - ys.0);
    if area == 0.0 {
        return Ok(IntegralResult::exact(0.0));
    }
    let (fine, coarse) = cfg.rules();
    let mut acc = Acc::new();
    cell_2d(&f, &fine, &coarse, xs, ys, 0, area.abs(), cfg, &mut acc)?;
    acc.finish(cfg)
}

#[allow(clippy::too_many_arguments)]
fn cell_2d<F: Fn(f64, f64) -> Result<f64>>(
    f: &F,
    fine: &GaussLegendre,
    coarse: &GaussLegendre,
    xs: (f64, f64),
    ys: (f64, f64),
    depth: u32,
    total: f64,
    cfg: &QuadConfig,
    acc: &mut Acc,
) -> Result<()> {
    let (v_fine, mag) = apply_2d(f, fine, xs, ys)?;
    let (v_coarse, _) = apply_2d(f, coarse, xs, ys)?;
    let err = (v_fine - v_coarse).abs();
    let cell_area = ((xs.1 - xs.0) * (ys.1 - ys.0)).abs();
    let local_tol = (cfg.abs_tol * cell_area / total).max(ROUNDOFF_FACTOR * mag);
    if err <= local_tol || depth >= cfg.max_subdiv {
        if err > local_tol {
            acc.converged = false;
        }
        acc.value += v_fine;
        acc.err += err;
        acc.floor += ROUNDOFF_FACTOR * mag;
        acc.depth = acc.depth.max(depth);
        return Ok(());
    }
    let xm = 0.5 * (xs.0 + xs.1);
    let ym = 0.5 * (ys.0 + ys.1);
    for (cx, cy) in [
        ((xs.0, xm), (ys.0, ym)),
        ((xs.0, xm), (ym, ys.1)),
        ((xm, xs.1), (ys.0, ym)),
        ((xm, xs.1), (ym, ys.1)),
    ] {
        cell_2d(f, fine, coarse, cx, cy, depth + 1, total, cfg, acc)?;
    }
    Ok(())
}

fn apply_2d<F: Fn(f64, f64) -> Result<f64>>(
    f: &F,
    r: &GaussLegendre,
    xs: (f64, f64),
    ys: (f64, f64),
) -> Result<(f64, f64)> {
    let hx = 0.5 * (xs.1 - xs.0);
    let mx = 0.5 * (xs.1 + xs.0);
    let hy = 0.5 * (ys.1 - ys.0);
    let my = 0.5 * (ys.1 + ys.0);
    let mut acc = 0.0;
    let mut mag = 0.0;
    for (xi, wi) in r.nodes.iter().zip(&r.weights) {
        let u = mx + hx * xi;
        let mut row = 0.0;
        let mut row_mag = 0.0;
        for (yj, wj) in r.nodes.iter().zip(&r.weights) {
            let term = wj * f(u, my + hy * yj)?;
            row += term;
            row_mag += term.abs();
        }
        acc += wi * row;
        mag += wi.abs() * row_mag;
    }
    let jac = hx * hy;
    Ok((acc * jac, mag * jac.abs()))
}
