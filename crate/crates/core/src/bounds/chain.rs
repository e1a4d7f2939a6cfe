//! The five-term chain from the midpoint value to the corner average.

use serde::{Deserialize, Serialize};

use crate::domain::{Rect, SExponent};
use crate::error::Result;
use crate::quad::{try_integrate_1d, try_integrate_2d};
use crate::surfaces::{certify_coordinated, Surface};

use super::{BoundOptions, RectParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainEvaluation {
    /// `4^{s-1} f(midpoint)`
    pub e0: f64,
    /// `2^{s-2}` times the sum of the two mid-section means
    pub e1: f64,
    /// mean of `f` over the rectangle
    pub e2: f64,
    /// `1/(2(s+1))` times the sum of the four edge means
    pub e3: f64,
    /// corner sum over `(s+1)^2`
    pub e4: f64,
    pub monotone: bool,
    pub tol: f64,
    pub s: f64,
    pub rect: RectParams,
    pub hypothesis_certified: Option<bool>,
}

impl ChainEvaluation {
    pub fn values(&self) -> [f64; 5] {
        [self.e0, self.e1, self.e2, self.e3, self.e4]
    }
}

struct Means {
    mid_u: f64,
    mid_v: f64,
    area: f64,
    edges: [f64; 4],
}

fn means(f: &Surface, rect: &Rect, opts: &BoundOptions) -> Result<Means> {
    let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
    let (w, h) = (rect.width(), rect.height());
    let m = rect.midpoint();
    if let Some(p) = f.as_power_sum() {
        return Ok(Means {
            mid_u: p.integral_u(m.y, a, b) / w,
            mid_v: p.integral_v(m.x, c, d) / h,
            area: p.integral_box(a, b, c, d) / rect.area(),
            edges: [
                p.integral_v(a, c, d) / h,
                p.integral_v(b, c, d) / h,
                p.integral_u(c, a, b) / w,
                p.integral_u(d, a, b) / w,
            ],
        });
    }
    let cfg = &opts.quad;
    let along_u = |v0: f64| try_integrate_1d(|u| f.eval(u, v0), a, b, cfg).map(|r| r.value / w);
    let along_v = |u0: f64| try_integrate_1d(|v| f.eval(u0, v), c, d, cfg).map(|r| r.value / h);
    Ok(Means {
        mid_u: along_u(m.y)?,
        mid_v: along_v(m.x)?,
        area: try_integrate_2d(|u, v| f.eval(u, v), rect, cfg)?.value / rect.area(),
        edges: [along_v(a)?, along_v(b)?, along_u(c)?, along_u(d)?],
    })
}

pub fn chain_evaluate(
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    opts: &BoundOptions,
) -> Result<ChainEvaluation> {
    let hypothesis_certified = match &opts.certify {
        Some(cfg) => Some(
            certify_coordinated(|u, v| f.eval(u, v).unwrap_or(f64::NAN), rect, s, cfg)?.passed(),
        ),
        None => None,
    };
    let sv = s.get();
    let m = rect.midpoint();
    let mv = means(f, rect, opts)?;
    let mut corners = 0.0;
    for k in rect.corners() {
        corners += f.eval(k.x, k.y)?;
    }
    let e0 = 4f64.powf(sv - 1.0) * f.eval(m.x, m.y)?;
    let e1 = 2f64.powf(sv - 2.0) * (mv.mid_u + mv.mid_v);
    let e2 = mv.area;
    let e3 = mv.edges.iter().sum::<f64>() / (2.0 * (sv + 1.0));
    let e4 = corners / ((sv + 1.0) * (sv + 1.0));
    let tol = opts.abs_tol;
    let e = [e0, e1, e2, e3, e4];
    let monotone = e.windows(2).all(|p| p[0] <= p[1] + tol);
    Ok(ChainEvaluation {
        e0,
        e1,
        e2,
        e3,
        e4,
        monotone,
        tol,
        s: sv,
        rect: rect.into(),
        hypothesis_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::make_rect;
    use crate::error::Error;
    use crate::surfaces::catalog::s_power;
    use crate::surfaces::{catalog, lookup, SamplerConfig};

    fn s(v: f64) -> SExponent {
        SExponent::new(v).unwrap()
    }

    #[test]
    fn bilinear_unit_square_is_flat() {
        let ev = chain_evaluate(
            &lookup("bilinear").unwrap(),
            &Rect::unit(),
            s(1.0),
            &BoundOptions::default(),
        )
        .unwrap();
        for e in ev.values() {
            assert!((e - 0.25).abs() <= 1e-12);
        }
        assert!(ev.monotone);
    }

    #[test]
    fn constants_are_flat_at_s_one() {
        let k = 3.5;
        let ev = chain_evaluate(
            &Surface::constant(k),
            &make_rect(0.0, 2.0, 0.0, 3.0).unwrap(),
            s(1.0),
            &BoundOptions::default(),
        )
        .unwrap();
        for e in ev.values() {
            assert!((e - k).abs() <= 1e-12);
        }
        assert!(ev.monotone);
    }

    #[test]
    fn s_power_family() {
        let ev = chain_evaluate(
            &s_power(0.5),
            &Rect::unit(),
            s(0.5),
            &BoundOptions::default(),
        )
        .unwrap();
        assert!(ev.monotone, "{ev:?}");
        for e in [ev.e2, ev.e3, ev.e4] {
            assert!((e - 4.0 / 9.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn quadrature_path_matches_closed_form() {
        let f = lookup("power_2.5_3").unwrap();
        let p = f.as_power_sum().unwrap();
        let g = Surface::from_fns("copy", move |u, v| p.eval(u, v), |_, _| 0.0);
        let r = make_rect(0.0, 2.0, 0.0, 3.0).unwrap();
        let o = BoundOptions::default();
        let a = chain_evaluate(&f, &r, s(0.5), &o).unwrap();
        let b = chain_evaluate(&g, &r, s(0.5), &o).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-11 * x.abs().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn monotone_for_certified_catalog() {
        let rects = [Rect::unit(), make_rect(0.0, 2.0, 0.0, 3.0).unwrap()];
        let o = BoundOptions::default();
        for r in &rects {
            for sv in [0.25, 0.5, 0.75, 1.0] {
                let mut fs: Vec<(String, Surface)> = catalog()
                    .into_iter()
                    .filter(|e| e.f_s_convex)
                    .map(|e| (e.name, e.surface))
                    .collect();
                fs.push(("s_power".into(), s_power(sv)));
                for (name, f) in fs {
                    let ev = chain_evaluate(&f, r, s(sv), &o).unwrap();
                    assert!(ev.monotone, "{name} s={sv}: {ev:?}");
                }
            }
        }
    }

    #[test]
    fn certification_needs_nonnegative_domain() {
        let o = BoundOptions {
            certify: Some(SamplerConfig::default()),
            ..BoundOptions::default()
        };
        let r = make_rect(-1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            chain_evaluate(&Surface::constant(1.0), &r, s(1.0), &o),
            Err(Error::NegativeDomain { .. })
        ));
        let ok = chain_evaluate(&lookup("quartic").unwrap(), &Rect::unit(), s(0.5), &o).unwrap();
        assert_eq!(ok.hypothesis_certified, Some(true));
    }
}
