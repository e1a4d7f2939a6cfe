//! Right-hand sides of the three bound families, their corner, midpoint
//! and summed forms, and the five-term mean chain, each paired with the
//! matching left side in a [`BoundReport`].

pub mod chain;
pub mod corollary;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::{
    Corner, EvalPoint, HolderPair, NormalizationMode, PowerMeanQ, Rect, SExponent,
};
use crate::error::{Error, Result};
use crate::identity::lemma_lhs;
use crate::quad::{holder_kernel_constant, power_mean_prefactor, QuadConfig, T3Constant};
use crate::surfaces::{certify_coordinated, SamplerConfig, Surface};

pub use chain::{chain_evaluate, ChainEvaluation};
pub use corollary::{
    corner_report, corner_rhs, midpoint_lhs, midpoint_report, midpoint_rhs, remark_aggregate,
    remark_rhs, special_report,
};

/// Absolute part of the `holds` tolerance.
pub const ABS_TOL: f64 = 1e-10;
/// Relative part of the `holds` tolerance, scaled by `|rhs|`.
pub const REL_TOL: f64 = 1e-12;

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    T1,
    T2,
    T3,
    C1_1,
    C1_2,
    C1_3,
    C1_4,
    #[serde(rename = "c1_mid")]
    C1_Mid,
    C2_1,
    C2_2,
    C2_3,
    C2_4,
    C2_5,
    C3_1,
    C3_2,
    C3_3,
    C3_4,
    C3_5,
    #[serde(rename = "r_c15")]
    R_C15,
    #[serde(rename = "r_metu")]
    R_Metu,
    #[serde(rename = "r_final")]
    R_Final,
    Chain,
}

impl TheoremId {
    pub const ALL: [TheoremId; 22] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::C1_1,
        TheoremId::C1_2,
        TheoremId::C1_3,
        TheoremId::C1_4,
        TheoremId::C1_Mid,
        TheoremId::C2_1,
        TheoremId::C2_2,
        TheoremId::C2_3,
        TheoremId::C2_4,
        TheoremId::C2_5,
        TheoremId::C3_1,
        TheoremId::C3_2,
        TheoremId::C3_3,
        TheoremId::C3_4,
        TheoremId::C3_5,
        TheoremId::R_C15,
        TheoremId::R_Metu,
        TheoremId::R_Final,
        TheoremId::Chain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T1 => "t1",
            TheoremId::T2 => "t2",
            TheoremId::T3 => "t3",
            TheoremId::C1_1 => "c1_1",
            TheoremId::C1_2 => "c1_2",
            TheoremId::C1_3 => "c1_3",
            TheoremId::C1_4 => "c1_4",
            TheoremId::C1_Mid => "c1_mid",
            TheoremId::C2_1 => "c2_1",
            TheoremId::C2_2 => "c2_2",
            TheoremId::C2_3 => "c2_3",
            TheoremId::C2_4 => "c2_4",
            TheoremId::C2_5 => "c2_5",
            TheoremId::C3_1 => "c3_1",
            TheoremId::C3_2 => "c3_2",
            TheoremId::C3_3 => "c3_3",
            TheoremId::C3_4 => "c3_4",
            TheoremId::C3_5 => "c3_5",
            TheoremId::R_C15 => "r_c15",
            TheoremId::R_Metu => "r_metu",
            TheoremId::R_Final => "r_final",
            TheoremId::Chain => "chain",
        }
    }

    /// The corner used by corner specializations; part `k` maps
    /// 1 → (a, c), 2 → (b, d), 3 → (a, d), 4 → (b, c).
    pub fn corner(self) -> Option<Corner> {
        use TheoremId::*;
        match self {
            C1_1 | C2_1 | C3_1 => Some(Corner::AC),
            C1_2 | C2_2 | C3_2 => Some(Corner::BD),
            C1_3 | C2_3 | C3_3 => Some(Corner::AD),
            C1_4 | C2_4 | C3_4 => Some(Corner::BC),
            _ => None,
        }
    }

    pub fn family(self) -> Option<Family> {
        use TheoremId::*;
        match self {
            T1 | C1_1 | C1_2 | C1_3 | C1_4 | C1_Mid | R_C15 => Some(Family::T1),
            T2 | C2_1 | C2_2 | C2_3 | C2_4 | C2_5 | R_Metu => Some(Family::T2),
            T3 | C3_1 | C3_2 | C3_3 | C3_4 | C3_5 | R_Final => Some(Family::T3),
            Chain => None,
        }
    }

    pub fn is_midpoint(self) -> bool {
        matches!(self, TheoremId::C1_Mid | TheoremId::C2_5 | TheoremId::C3_5)
    }

    pub fn is_remark(self) -> bool {
        matches!(
            self,
            TheoremId::R_C15 | TheoremId::R_Metu | TheoremId::R_Final
        )
    }

    pub fn corner_id(family: Family, corner: Corner) -> TheoremId {
        use TheoremId::*;
        let ids = match family {
            Family::T1 => [C1_1, C1_2, C1_3, C1_4],
            Family::T2 => [C2_1, C2_2, C2_3, C2_4],
            Family::T3 => [C3_1, C3_2, C3_3, C3_4],
        };
        match corner {
            Corner::AC => ids[0],
            Corner::BD => ids[1],
            Corner::AD => ids[2],
            Corner::BC => ids[3],
        }
    }

    pub fn midpoint_id(family: Family) -> TheoremId {
        match family {
            Family::T1 => TheoremId::C1_Mid,
            Family::T2 => TheoremId::C2_5,
            Family::T3 => TheoremId::C3_5,
        }
    }

    pub fn remark_id(family: Family) -> TheoremId {
        match family {
            Family::T1 => TheoremId::R_C15,
            Family::T2 => TheoremId::R_Metu,
            Family::T3 => TheoremId::R_Final,
        }
    }

    pub fn theorem_id(family: Family) -> TheoremId {
        match family {
            Family::T1 => TheoremId::T1,
            Family::T2 => TheoremId::T2,
            Family::T3 => TheoremId::T3,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let s = match s.as_str() {
            "mid" | "c1_5" => "c1_mid",
            other => other,
        };
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown theorem id `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    T1,
    T2,
    T3,
}

/// A bound family with its exponent parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Bound {
    T1,
    T2 { holder: HolderPair },
    T3 { q: PowerMeanQ, constant: T3Constant },
}

impl Bound {
    pub fn family(&self) -> Family {
        match self {
            Bound::T1 => Family::T1,
            Bound::T2 { .. } => Family::T2,
            Bound::T3 { .. } => Family::T3,
        }
    }

    /// Exponent applied to `|D|` when checking the hypothesis.
    pub fn q(&self) -> f64 {
        match self {
            Bound::T1 => 1.0,
            Bound::T2 { holder } => holder.q,
            Bound::T3 { q, .. } => q.get(),
        }
    }

    fn t3_constant(&self) -> Option<T3Constant> {
        match self {
            Bound::T3 { constant, .. } => Some(*constant),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl From<&Rect> for RectParams {
    fn from(r: &Rect) -> Self {
        RectParams {
            a: r.a(),
            b: r.b(),
            c: r.c(),
            d: r.d(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub rect: RectParams,
    pub pt: Option<EvalPoint>,
    pub s: f64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub mode: NormalizationMode,
    pub t3_constant: Option<T3Constant>,
}

impl BoundParams {
    pub fn new(
        bound: &Bound,
        rect: &Rect,
        pt: Option<EvalPoint>,
        s: SExponent,
        mode: NormalizationMode,
    ) -> Self {
        let (p, q) = match bound {
            Bound::T1 => (None, None),
            Bound::T2 { holder } => (Some(holder.p), Some(holder.q)),
            Bound::T3 { q, .. } => (None, Some(q.get())),
        };
        BoundParams {
            rect: rect.into(),
            pt,
            s: s.get(),
            p,
            q,
            mode,
            t3_constant: bound.t3_constant(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub params: BoundParams,
    pub tol: f64,
    /// `None` when the hypothesis was not checked.
    pub hypothesis_certified: Option<bool>,
}

impl BoundReport {
    pub fn new(
        theorem_id: TheoremId,
        lhs: f64,
        rhs: f64,
        params: BoundParams,
        abs_tol: f64,
    ) -> Self {
        let tol = abs_tol + REL_TOL * rhs.abs();
        let margin = rhs - lhs;
        BoundReport {
            theorem_id,
            lhs,
            rhs,
            margin,
            holds: margin >= -tol,
            params,
            tol,
            hypothesis_certified: None,
        }
    }
}

/// Evaluation settings shared by every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundOptions {
    pub mode: NormalizationMode,
    pub quad: QuadConfig,
    /// Run the s-convexity certifier on `|D|^q` when set.
    pub certify: Option<SamplerConfig>,
    pub abs_tol: f64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            mode: NormalizationMode::Corrected,
            quad: QuadConfig::default(),
            certify: None,
            abs_tol: ABS_TOL,
        }
    }
}

/// `|∂²f/∂u∂v|` at a point.
pub fn mixed_abs(f: &Surface, pt: EvalPoint) -> Result<f64> {
    f.mixed_abs(pt.x, pt.y)
}

/// `coef * |D(pt)|`, skipping the evaluation when `coef` is zero.
fn weighted(f: &Surface, coef: f64, u: f64, v: f64) -> Result<f64> {
    if coef == 0.0 {
        Ok(0.0)
    } else {
        Ok(coef * f.mixed_abs(u, v)?)
    }
}

/// `|D|^q`, zero when `|D|` is.
fn dq(f: &Surface, u: f64, v: f64, q: f64) -> Result<f64> {
    let d = f.mixed_abs(u, v)?;
    Ok(if d == 0.0 { 0.0 } else { d.powf(q) })
}

/// Corner offsets `(u-side weight, v-side weight)` for the quadrant at `corner`.
fn quadrant_offsets(rect: &Rect, pt: EvalPoint, corner: Corner) -> (f64, f64) {
    let c = rect.corner(corner);
    ((pt.x - c.x).abs(), (pt.y - c.y).abs())
}

pub fn t1_rhs(f: &Surface, rect: &Rect, pt: EvalPoint, s: SExponent) -> Result<f64> {
    rect.check_point(pt)?;
    let s1 = s.get() + 1.0;
    let s2 = s.get() + 2.0;
    let (l, r) = (pt.x - rect.a(), rect.b() - pt.x);
    let (lo, hi) = (pt.y - rect.c(), rect.d() - pt.y);
    let (l2, r2, lo2, hi2) = (l * l, r * r, lo * lo, hi * hi);
    let xx = l2 + r2;
    let yy = lo2 + hi2;
    let (x, y) = (pt.x, pt.y);
    let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
    let sum = weighted(f, xx * yy / (s1 * s1), x, y)?
        + weighted(f, l2 * yy / s1, a, y)?
        + weighted(f, r2 * yy / s1, b, y)?
        + weighted(f, lo2 * xx / s1, x, c)?
        + weighted(f, hi2 * xx / s1, x, d)?
        + weighted(f, l2 * lo2, a, c)?
        + weighted(f, l2 * hi2, a, d)?
        + weighted(f, r2 * lo2, b, c)?
        + weighted(f, r2 * hi2, b, d)?;
    Ok(sum / (rect.area() * s2 * s2))
}

/// The four `|D|^q` values used by the quadrant at `corner`: at `(x, y)`,
/// on the horizontal edge, on the vertical edge, and at the corner.
fn quadrant_values(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    corner: Corner,
    q: f64,
) -> Result<[f64; 4]> {
    let c = rect.corner(corner);
    Ok([
        dq(f, pt.x, pt.y, q)?,
        dq(f, pt.x, c.y, q)?,
        dq(f, c.x, pt.y, q)?,
        dq(f, c.x, c.y, q)?,
    ])
}

fn quadrant_sum<G>(f: &Surface, rect: &Rect, pt: EvalPoint, q: f64, inner: G) -> Result<f64>
where
    G: Fn([f64; 4]) -> f64,
{
    let mut total = 0.0;
    for corner in Corner::ALL {
        let (wu, wv) = quadrant_offsets(rect, pt, corner);
        let w2 = wu * wu * wv * wv;
        if w2 == 0.0 {
            continue;
        }
        let vals = quadrant_values(f, rect, pt, corner, q)?;
        total += w2 * inner(vals).powf(1.0 / q);
    }
    Ok(total)
}

pub fn t2_rhs(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
    hp: HolderPair,
) -> Result<f64> {
    rect.check_point(pt)?;
    let q = hp.q;
    let sum = quadrant_sum(f, rect, pt, q, |v| v.iter().sum())?;
    Ok(holder_kernel_constant(hp.p) * (s.get() + 1.0).powf(-2.0 / q) * sum / rect.area())
}

pub fn t3_rhs(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
    q: PowerMeanQ,
    constant: T3Constant,
) -> Result<f64> {
    rect.check_point(pt)?;
    let s1 = s.get() + 1.0;
    let qv = q.get();
    let sum = quadrant_sum(f, rect, pt, qv, |v| {
        v[0] + s1 * (v[1] + v[2]) + s1 * s1 * v[3]
    })?;
    let lead = power_mean_prefactor(q, constant) / (s1 * (s.get() + 2.0)).powf(2.0 / qv);
    Ok(lead * sum / rect.area())
}

pub fn bound_rhs(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
) -> Result<f64> {
    match bound {
        Bound::T1 => t1_rhs(f, rect, pt, s),
        Bound::T2 { holder } => t2_rhs(f, rect, pt, s, *holder),
        Bound::T3 { q, constant } => t3_rhs(f, rect, pt, s, *q, *constant),
    }
}

/// Samples `|D|^q` for co-ordinated s-convexity over `rect`.
pub fn certify_hypothesis(
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    q: f64,
    cfg: &SamplerConfig,
) -> Result<bool> {
    let report = certify_coordinated(
        |u, v| match f.mixed_abs(u, v) {
            Ok(d) => d.powf(q),
            Err(_) => f64::NAN,
        },
        rect,
        s,
        cfg,
    )?;
    Ok(report.passed())
}

fn hypothesis(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    opts: &BoundOptions,
) -> Result<Option<bool>> {
    opts.certify
        .as_ref()
        .map(|cfg| certify_hypothesis(f, rect, s, bound.q(), cfg))
        .transpose()
}

/// The general bound at `pt`, paired with `|lemma_lhs|`.
pub fn bound_report(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    let lhs = lemma_lhs(f, rect, pt, opts.mode, &opts.quad)?.abs();
    let rhs = bound_rhs(bound, f, rect, pt, s)?;
    let params = BoundParams::new(bound, rect, Some(pt), s, opts.mode);
    let mut report = BoundReport::new(
        TheoremId::theorem_id(bound.family()),
        lhs,
        rhs,
        params,
        opts.abs_tol,
    );
    report.hypothesis_certified = hypothesis(bound, f, rect, s, opts)?;
    Ok(report)
}

pub fn t1_report(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    bound_report(&Bound::T1, f, rect, pt, s, opts)
}

pub fn t2_report(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
    holder: HolderPair,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    bound_report(&Bound::T2 { holder }, f, rect, pt, s, opts)
}

pub fn t3_report(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    s: SExponent,
    q: PowerMeanQ,
    constant: T3Constant,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    bound_report(&Bound::T3 { q, constant }, f, rect, pt, s, opts)
}
