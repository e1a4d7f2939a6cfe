//! Both sides of the corner/edge/area integral identity and its residual.
//!
//! For `f` on `[a, b] x [c, d]` and `(x, y)` in the rectangle the left side
//! combines the corner term `A`, four weighted edge integrals and the area
//! integral of `f`; the right side is a sum of four kernel-weighted
//! integrals of the mixed partial, one per quadrant around `(x, y)`.

pub mod exact;

use serde::{Deserialize, Serialize};

use crate::domain::{Corner, EvalPoint, NormalizationMode, Rect};
use crate::error::Result;
use crate::quad::exact::{q, to_f64, RationalRect};
use crate::quad::{try_integrate_1d, try_integrate_2d, QuadConfig};
use crate::surfaces::{Surface, SurfaceKind};

/// How the edge and area integrals on the left side are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPath {
    /// Rational arithmetic for polynomials, closed forms for power sums,
    /// quadrature otherwise.
    #[default]
    Auto,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaEvaluation {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub mode: NormalizationMode,
    pub a_term: f64,
    /// In the order AC, AD, BC, BD.
    pub quadrant_terms: [f64; 4],
    pub boundary_exact: bool,
}

/// Corner weights `(x-a)(y-c)`, `(x-a)(d-y)`, `(b-x)(y-c)`, `(b-x)(d-y)`.
pub fn corner_weights(rect: &Rect, pt: EvalPoint) -> [f64; 4] {
    let (l, r) = (pt.x - rect.a(), rect.b() - pt.x);
    let (lo, hi) = (pt.y - rect.c(), rect.d() - pt.y);
    [l * lo, l * hi, r * lo, r * hi]
}

pub fn corner_term_a(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    mode: NormalizationMode,
) -> Result<f64> {
    rect.check_point(pt)?;
    let w = corner_weights(rect, pt);
    let mut sum = 0.0;
    for (wi, c) in w.iter().zip(rect.corners()) {
        sum += wi * f.eval(c.x, c.y)?;
    }
    Ok(match mode {
        NormalizationMode::Corrected => sum,
        NormalizationMode::Verbatim => sum / rect.area(),
    })
}

struct Boundary {
    /// `∫ f(a, v) dv`, `∫ f(b, v) dv`, `∫ f(u, c) du`, `∫ f(u, d) du`.
    edges: [f64; 4],
    area: f64,
}

fn boundary_closed_form(f: &Surface, rect: &Rect) -> Option<Boundary> {
    let p = f.as_power_sum()?;
    let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
    Some(Boundary {
        edges: [
            p.integral_v(a, c, d),
            p.integral_v(b, c, d),
            p.integral_u(c, a, b),
            p.integral_u(d, a, b),
        ],
        area: p.integral_box(a, b, c, d),
    })
}

fn boundary_quadrature(f: &Surface, rect: &Rect, cfg: &QuadConfig) -> Result<Boundary> {
    let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
    let along_v = |u0: f64| try_integrate_1d(|v| f.eval(u0, v), c, d, cfg).map(|r| r.value);
    let along_u = |v0: f64| try_integrate_1d(|u| f.eval(u, v0), a, b, cfg).map(|r| r.value);
    Ok(Boundary {
        edges: [along_v(a)?, along_v(b)?, along_u(c)?, along_u(d)?],
        area: try_integrate_2d(|u, v| f.eval(u, v), rect, cfg)?.value,
    })
}

fn lhs_from_boundary(a_term: f64, rect: &Rect, pt: EvalPoint, bd: &Boundary) -> f64 {
    let [ea, eb, ec, ed] = bd.edges;
    let bracket = a_term
        - (pt.x - rect.a()) * ea
        - (rect.b() - pt.x) * eb
        - (rect.d() - pt.y) * ed
        - (pt.y - rect.c()) * ec
        + bd.area;
    bracket / rect.area()
}

fn lhs_with(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    mode: NormalizationMode,
    cfg: &QuadConfig,
    path: BoundaryPath,
) -> Result<(f64, bool)> {
    rect.check_point(pt)?;
    if path == BoundaryPath::Auto {
        if let Some(p) = f.as_poly() {
            let rr = RationalRect::from_rect(rect);
            return Ok((
                to_f64(&exact::lhs_exact(p, &rr, &q(pt.x), &q(pt.y), mode)),
                true,
            ));
        }
        if let Some(bd) = boundary_closed_form(f, rect) {
            let a = corner_term_a(f, rect, pt, mode)?;
            return Ok((lhs_from_boundary(a, rect, pt, &bd), false));
        }
    }
    let bd = boundary_quadrature(f, rect, cfg)?;
    let a = corner_term_a(f, rect, pt, mode)?;
    Ok((lhs_from_boundary(a, rect, pt, &bd), false))
}

pub fn lemma_lhs(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    mode: NormalizationMode,
    cfg: &QuadConfig,
) -> Result<f64> {
    lhs_with(f, rect, pt, mode, cfg, BoundaryPath::Auto).map(|r| r.0)
}

/// Same as [`lemma_lhs`] with an explicit choice of boundary path.
pub fn lemma_lhs_via(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    mode: NormalizationMode,
    cfg: &QuadConfig,
    path: BoundaryPath,
) -> Result<f64> {
    lhs_with(f, rect, pt, mode, cfg, path).map(|r| r.0)
}

/// Quadrant kernels on `[0,1]^2` in `(t, λ)`.
pub fn kernel(corner: Corner, t: f64, l: f64) -> f64 {
    match corner {
        Corner::AC => (t - 1.0) * (l - 1.0),
        Corner::AD => (t - 1.0) * (1.0 - l),
        Corner::BC => (1.0 - t) * (l - 1.0),
        Corner::BD => (1.0 - t) * (1.0 - l),
    }
}

/// Squared corner weights divided by the area.
pub fn quadrant_coefficients(rect: &Rect, pt: EvalPoint) -> [f64; 4] {
    corner_weights(rect, pt).map(|w| w * w / rect.area())
}

/// Quadrature tolerance floor when the mixed partial comes from finite
/// differences, whose own error is far above the default tolerance.
pub const NUMERIC_ABS_TOL: f64 = 1e-7;

/// The four quadrant terms, in the order AC, AD, BC, BD.
pub fn quadrant_terms(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    cfg: &QuadConfig,
) -> Result<[f64; 4]> {
    rect.check_point(pt)?;
    let mut cfg = *cfg;
    if f.kind() == SurfaceKind::NumericOnly {
        cfg.abs_tol = cfg.abs_tol.max(NUMERIC_ABS_TOL);
    }
    let coef = quadrant_coefficients(rect, pt);
    let unit = Rect::unit();
    let mut out = [0.0; 4];
    for (i, corner) in Corner::ALL.into_iter().enumerate() {
        if coef[i] == 0.0 {
            continue;
        }
        let base = rect.corner(corner);
        let integral = try_integrate_2d(
            |t, l| {
                let u = t * pt.x + (1.0 - t) * base.x;
                let v = l * pt.y + (1.0 - l) * base.y;
                Ok(kernel(corner, t, l) * f.mixed_partial(u, v)?)
            },
            &unit,
            &cfg,
        )?;
        out[i] = coef[i] * integral.value;
    }
    Ok(out)
}

pub fn lemma_rhs(f: &Surface, rect: &Rect, pt: EvalPoint, cfg: &QuadConfig) -> Result<f64> {
    Ok(quadrant_terms(f, rect, pt, cfg)?.iter().sum())
}

pub fn lemma_residual(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    mode: NormalizationMode,
    cfg: &QuadConfig,
) -> Result<LemmaEvaluation> {
    lemma_residual_via(f, rect, pt, mode, cfg, BoundaryPath::Auto)
}

pub fn lemma_residual_via(
    f: &Surface,
    rect: &Rect,
    pt: EvalPoint,
    mode: NormalizationMode,
    cfg: &QuadConfig,
    path: BoundaryPath,
) -> Result<LemmaEvaluation> {
    let (lhs, boundary_exact) = lhs_with(f, rect, pt, mode, cfg, path)?;
    let quadrant_terms = quadrant_terms(f, rect, pt, cfg)?;
    let rhs: f64 = quadrant_terms.iter().sum();
    Ok(LemmaEvaluation {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        mode,
        a_term: corner_term_a(f, rect, pt, mode)?,
        quadrant_terms,
        boundary_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::make_rect;
    use crate::surfaces::{catalog, lookup, parse_surface};
    use proptest::prelude::*;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn rect(a: f64, b: f64, c: f64, d: f64) -> Rect {
        make_rect(a, b, c, d).unwrap()
    }

    #[test]
    fn corner_term_examples() {
        let k = Surface::constant(3.0);
        let r = rect(0.0, 2.0, 1.0, 4.0);
        let pt = EvalPoint::new(0.5, 2.0);
        assert_eq!(
            corner_term_a(&k, &r, pt, NormalizationMode::Corrected).unwrap(),
            18.0
        );
        assert_eq!(
            corner_term_a(&k, &r, pt, NormalizationMode::Verbatim).unwrap(),
            3.0
        );
        let uv = lookup("bilinear").unwrap();
        let mid = Rect::unit().midpoint();
        for mode in [NormalizationMode::Corrected, NormalizationMode::Verbatim] {
            assert_eq!(corner_term_a(&uv, &Rect::unit(), mid, mode).unwrap(), 0.25);
        }
    }

    #[test]
    fn lhs_examples() {
        let uv = lookup("bilinear").unwrap();
        let wide = rect(0.0, 2.0, 0.0, 1.0);
        let origin = EvalPoint::new(0.0, 0.0);
        let got = lemma_lhs(&uv, &wide, origin, NormalizationMode::Corrected, &cfg()).unwrap();
        assert_eq!(got, 0.5);
        let mid = Rect::unit().midpoint();
        assert_eq!(
            lemma_lhs(
                &uv,
                &Rect::unit(),
                mid,
                NormalizationMode::Corrected,
                &cfg()
            )
            .unwrap(),
            0.0
        );
        for r in [wide, rect(-1.0, 3.0, 0.5, 0.75)] {
            for pt in r.lattice(3) {
                let k = Surface::constant(2.5);
                assert_eq!(
                    lemma_lhs(&k, &r, pt, NormalizationMode::Corrected, &cfg()).unwrap(),
                    0.0
                );
            }
        }
    }

    #[test]
    fn rhs_examples() {
        let uv = lookup("bilinear").unwrap();
        let wide = rect(0.0, 2.0, 0.0, 1.0);
        let got = lemma_rhs(&uv, &wide, EvalPoint::new(0.0, 0.0), &cfg()).unwrap();
        assert!((got - 0.5).abs() < 1e-14);
        assert_eq!(
            lemma_rhs(
                &Surface::constant(4.0),
                &wide,
                EvalPoint::new(1.0, 0.3),
                &cfg()
            )
            .unwrap(),
            0.0
        );
    }

    #[test]
    fn residual_examples() {
        let uv = lookup("bilinear").unwrap();
        let wide = rect(0.0, 2.0, 0.0, 1.0);
        let ev = lemma_residual(
            &uv,
            &wide,
            EvalPoint::new(0.0, 0.0),
            NormalizationMode::Corrected,
            &cfg(),
        )
        .unwrap();
        assert!(ev.residual <= 1e-12);
        assert!((ev.lhs - 0.5).abs() <= 1e-12 && (ev.rhs - 0.5).abs() <= 1e-12);
        assert!(ev.boundary_exact);
        assert_eq!(ev.rhs, ev.quadrant_terms.iter().sum::<f64>());

        let one = Surface::constant(1.0);
        let pt = EvalPoint::new(0.5, 0.5);
        let ev = lemma_residual(&one, &wide, pt, NormalizationMode::Corrected, &cfg()).unwrap();
        assert_eq!(ev.residual, 0.0);
        let ev = lemma_residual(&one, &wide, pt, NormalizationMode::Verbatim, &cfg()).unwrap();
        assert!((ev.residual - 0.5).abs() <= 1e-12, "{}", ev.residual);
        let ev =
            lemma_residual(&one, &Rect::unit(), pt, NormalizationMode::Verbatim, &cfg()).unwrap();
        assert_eq!(ev.residual, 0.0);
    }

    #[test]
    fn boundary_points_skip_vanishing_quadrants() {
        // u^0.5 v has a singular mixed partial on u = 0; at x = a the
        // quadrants touching that edge have zero weight and are not integrated.
        let f = parse_surface("u^0.5*v").unwrap();
        let r = rect(0.0, 1.0, 0.0, 1.0);
        let terms = quadrant_terms(&f, &r, EvalPoint::new(0.0, 0.5), &cfg());
        assert!(terms.is_err() || terms.unwrap()[0] == 0.0);
        let t = quadrant_terms(
            &lookup("quartic").unwrap(),
            &r,
            EvalPoint::new(0.0, 0.0),
            &cfg(),
        )
        .unwrap();
        assert_eq!(&t[..3], &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn closed_form_and_quadrature_boundaries_agree() {
        let r = rect(0.5, 1.5, 0.25, 1.25);
        for entry in catalog() {
            for pt in r.interior_grid(3) {
                let mode = NormalizationMode::Corrected;
                let auto = lemma_lhs(&entry.surface, &r, pt, mode, &cfg()).unwrap();
                let quad = lemma_lhs_via(
                    &entry.surface,
                    &r,
                    pt,
                    mode,
                    &cfg(),
                    BoundaryPath::Quadrature,
                )
                .unwrap();
                assert!(
                    (auto - quad).abs() <= 1e-11 * auto.abs().max(1.0),
                    "{}: {auto} vs {quad}",
                    entry.name
                );
            }
        }
    }

    #[test]
    fn identity_holds_for_power_products() {
        let r = rect(0.5, 1.5, 0.25, 1.25);
        for entry in catalog() {
            for pt in r.interior_grid(5) {
                let ev =
                    lemma_residual(&entry.surface, &r, pt, NormalizationMode::Corrected, &cfg())
                        .unwrap();
                assert!(ev.residual <= 1e-10, "{} at {pt:?}: {ev:?}", entry.name);
            }
        }
    }

    #[test]
    fn numeric_surfaces_satisfy_identity_loosely() {
        let f = Surface::numeric("exp", |u: f64, v: f64| (u * v).exp());
        let r = rect(0.0, 1.0, 0.0, 1.0);
        let ev = lemma_residual(
            &f,
            &r,
            EvalPoint::new(0.3, 0.6),
            NormalizationMode::Corrected,
            &cfg(),
        )
        .unwrap();
        assert!(ev.residual <= 1e-6, "{ev:?}");
        let g = Surface::from_fns(
            "exp",
            |u: f64, v: f64| (u * v).exp(),
            |u: f64, v: f64| (1.0 + u * v) * (u * v).exp(),
        );
        let ev = lemma_residual(
            &g,
            &r,
            EvalPoint::new(0.3, 0.6),
            NormalizationMode::Corrected,
            &cfg(),
        )
        .unwrap();
        assert!(ev.residual <= 1e-10, "{ev:?}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn bilinear_rhs_closed_form(a in -2.0f64..2.0, w in 0.1f64..3.0, c in -2.0f64..2.0, h in 0.1f64..3.0, tx in 0.0f64..=1.0, ty in 0.0f64..=1.0) {
            let r = rect(a, a + w, c, c + h);
            let pt = EvalPoint::new(a + tx * w, c + ty * h);
            let (x, y) = (pt.x, pt.y);
            let want = ((x - a).powi(2) - (a + w - x).powi(2)) * ((y - c).powi(2) - (c + h - y).powi(2)) / (4.0 * r.area());
            let got = lemma_rhs(&lookup("bilinear").unwrap(), &r, pt, &cfg()).unwrap();
            prop_assert!((got - want).abs() <= 1e-11, "{got} vs {want}");
        }

        #[test]
        fn modes_coincide_on_unit_area(i in -16i32..16, k in -2i32..=2, tx in 0.0f64..=1.0, ty in 0.0f64..=1.0) {
            let (a, w) = (f64::from(i) / 8.0, 2f64.powi(k));
            let r = rect(a, a + w, 0.0, 1.0 / w);
            let pt = EvalPoint::new(a + tx * w, ty / w);
            for entry in catalog().into_iter().take(4) {
                let c = lemma_lhs(&entry.surface, &r, pt, NormalizationMode::Corrected, &cfg()).unwrap();
                let v = lemma_lhs(&entry.surface, &r, pt, NormalizationMode::Verbatim, &cfg()).unwrap();
                prop_assert!((c - v).abs() <= 1e-14 * c.abs().max(1.0));
            }
        }
    }
}
