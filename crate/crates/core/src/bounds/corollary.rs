//! Corner and midpoint specializations, and the aggregates obtained by
//! summing the four corner bounds.
//!
//! Right sides are written out directly in closed form; tests compare them
//! with the general bounds at the same points.

use crate::domain::{Corner, Rect, SExponent};
use crate::error::Result;
use crate::identity::lemma_lhs;
use crate::quad::{holder_kernel_constant, T3Constant};
use crate::surfaces::Surface;

use super::{hypothesis, Bound, BoundOptions, BoundParams, BoundReport, TheoremId};

fn d_at(f: &Surface, rect: &Rect, c: Corner) -> Result<f64> {
    let p = rect.corner(c);
    f.mixed_abs(p.x, p.y)
}

/// The two corners sharing an edge with `c`.
fn adjacent(c: Corner) -> [Corner; 2] {
    match c {
        Corner::AC => [Corner::AD, Corner::BC],
        Corner::AD => [Corner::AC, Corner::BD],
        Corner::BC => [Corner::AC, Corner::BD],
        Corner::BD => [Corner::AD, Corner::BC],
    }
}

fn pow_q(x: f64, q: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powf(q)
    }
}

/// `{|D(own)|^q + (s+1)(|D(adj)|^q + |D(adj')|^q) + (s+1)^2 |D(opp)|^q}^{1/q}`.
fn corner_brace(f: &Surface, rect: &Rect, c: Corner, s1: f64, q: f64) -> Result<f64> {
    let [j, k] = adjacent(c);
    let sum = pow_q(d_at(f, rect, c)?, q)
        + s1 * (pow_q(d_at(f, rect, j)?, q) + pow_q(d_at(f, rect, k)?, q))
        + s1 * s1 * pow_q(d_at(f, rect, c.opposite())?, q);
    Ok(sum.powf(1.0 / q))
}

fn corner_power_sum(f: &Surface, rect: &Rect, q: f64) -> Result<f64> {
    let mut sum = 0.0;
    for c in Corner::ALL {
        sum += pow_q(d_at(f, rect, c)?, q);
    }
    Ok(sum.powf(1.0 / q))
}

/// Bound at `(x, y) = corner`.
pub fn corner_rhs(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    corner: Corner,
    s: SExponent,
) -> Result<f64> {
    let area = rect.area();
    let s1 = s.get() + 1.0;
    let s2 = s.get() + 2.0;
    match bound {
        Bound::T1 => {
            let [j, k] = adjacent(corner);
            let inner = d_at(f, rect, corner)? / (s1 * s1)
                + (d_at(f, rect, j)? + d_at(f, rect, k)?) / s1
                + d_at(f, rect, corner.opposite())?;
            Ok(area / (s2 * s2) * inner)
        }
        Bound::T2 { holder } => {
            let q = holder.q;
            Ok(area * holder_kernel_constant(holder.p) / s1.powf(2.0 / q)
                * corner_power_sum(f, rect, q)?)
        }
        Bound::T3 { q, constant } => {
            let qv = q.get();
            let lead = match constant {
                T3Constant::Verbatim => 2f64.powf(2.0 - 2.0 / qv),
                T3Constant::Sharpened => 2f64.powf(2.0 / qv - 2.0),
            };
            Ok(lead * area / (s1 * s2).powf(2.0 / qv) * corner_brace(f, rect, corner, s1, qv)?)
        }
    }
}

/// `|¼ Σ f(corners) − ½ Σ (edge means) + mean of f|`, evaluated through the
/// identity's left side at the midpoint.
pub fn midpoint_lhs(f: &Surface, rect: &Rect, opts: &BoundOptions) -> Result<f64> {
    Ok(lemma_lhs(f, rect, rect.midpoint(), opts.mode, &opts.quad)?.abs())
}

pub fn midpoint_rhs(bound: &Bound, f: &Surface, rect: &Rect, s: SExponent) -> Result<f64> {
    let area = rect.area();
    let s1 = s.get() + 1.0;
    let s2 = s.get() + 2.0;
    let m = rect.midpoint();
    let d = |u: f64, v: f64| f.mixed_abs(u, v);
    let (a, b, c, dd) = (rect.a(), rect.b(), rect.c(), rect.d());
    match bound {
        Bound::T1 => {
            let corners: f64 = Corner::ALL
                .iter()
                .map(|&k| d_at(f, rect, k))
                .sum::<Result<f64>>()?;
            let inner = d(m.x, m.y)? / (s1 * s1)
                + (d(a, m.y)? + d(b, m.y)?) / (2.0 * s1)
                + (d(m.x, c)? + d(m.x, dd)?) / (2.0 * s1)
                + corners / 4.0;
            Ok(area / (4.0 * s2 * s2) * inner)
        }
        Bound::T2 { holder } => {
            let q = holder.q;
            let sum = midpoint_quadrants(f, rect, q, |v| v.iter().sum())?;
            Ok(area * holder_kernel_constant(holder.p) / (16.0 * s1.powf(2.0 / q)) * sum)
        }
        Bound::T3 { q, constant } => {
            let qv = q.get();
            let sum =
                midpoint_quadrants(f, rect, qv, |v| v[0] + s1 * (v[1] + v[2]) + s1 * s1 * v[3])?;
            let verbatim = area / (4.0 * (2.0 * s1 * s2).powf(2.0 / qv)) * sum;
            Ok(match constant {
                T3Constant::Verbatim => verbatim,
                T3Constant::Sharpened => verbatim * 2f64.powf(4.0 / qv - 4.0),
            })
        }
    }
}

/// `Σ_quadrants inner(|D(mid)|^q, |D(xm, edge)|^q, |D(edge, ym)|^q, |D(corner)|^q)^{1/q}`.
fn midpoint_quadrants<G: Fn([f64; 4]) -> f64>(
    f: &Surface,
    rect: &Rect,
    q: f64,
    inner: G,
) -> Result<f64> {
    let m = rect.midpoint();
    let mut total = 0.0;
    for c in Corner::ALL {
        let k = rect.corner(c);
        let vals = [
            pow_q(f.mixed_abs(m.x, m.y)?, q),
            pow_q(f.mixed_abs(m.x, k.y)?, q),
            pow_q(f.mixed_abs(k.x, m.y)?, q),
            pow_q(f.mixed_abs(k.x, k.y)?, q),
        ];
        total += inner(vals).powf(1.0 / q);
    }
    Ok(total)
}

pub fn corner_report(
    bound: &Bound,
    corner: Corner,
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    let pt = rect.corner(corner);
    let lhs = lemma_lhs(f, rect, pt, opts.mode, &opts.quad)?.abs();
    let rhs = corner_rhs(bound, f, rect, corner, s)?;
    let params = BoundParams::new(bound, rect, Some(pt), s, opts.mode);
    let id = TheoremId::corner_id(bound.family(), corner);
    let mut report = BoundReport::new(id, lhs, rhs, params, opts.abs_tol);
    report.hypothesis_certified = hypothesis(bound, f, rect, s, opts)?;
    Ok(report)
}

pub fn midpoint_report(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    let lhs = midpoint_lhs(f, rect, opts)?;
    let rhs = midpoint_rhs(bound, f, rect, s)?;
    let params = BoundParams::new(bound, rect, Some(rect.midpoint()), s, opts.mode);
    let mut report = BoundReport::new(
        TheoremId::midpoint_id(bound.family()),
        lhs,
        rhs,
        params,
        opts.abs_tol,
    );
    report.hypothesis_certified = hypothesis(bound, f, rect, s, opts)?;
    Ok(report)
}

/// Sum of the four corner bounds, each multiplied by the area.
pub fn remark_rhs(bound: &Bound, f: &Surface, rect: &Rect, s: SExponent) -> Result<f64> {
    let area = rect.area();
    let a2 = area * area;
    let s1 = s.get() + 1.0;
    let s2 = s.get() + 2.0;
    match bound {
        Bound::T1 => {
            let sum: f64 = Corner::ALL
                .iter()
                .map(|&k| d_at(f, rect, k))
                .sum::<Result<f64>>()?;
            Ok(a2 / (s1 * s1) * sum)
        }
        Bound::T2 { holder } => {
            let q = holder.q;
            Ok(
                4.0 * a2 * holder_kernel_constant(holder.p) / s1.powf(2.0 / q)
                    * corner_power_sum(f, rect, q)?,
            )
        }
        Bound::T3 { q, constant } => {
            let qv = q.get();
            let mut sum = 0.0;
            for c in Corner::ALL {
                sum += corner_brace(f, rect, c, s1, qv)?;
            }
            let verbatim = 4.0 * a2 / (2.0 * s1 * s2).powf(2.0 / qv) * sum;
            Ok(match constant {
                T3Constant::Verbatim => verbatim,
                T3Constant::Sharpened => verbatim * 2f64.powf(4.0 / qv - 4.0),
            })
        }
    }
}

/// Left side: `Σ_corners |area · lemma_lhs(corner)|`.
pub fn remark_lhs(f: &Surface, rect: &Rect, opts: &BoundOptions) -> Result<f64> {
    let mut sum = 0.0;
    for c in Corner::ALL {
        sum += (rect.area() * lemma_lhs(f, rect, rect.corner(c), opts.mode, &opts.quad)?).abs();
    }
    Ok(sum)
}

pub fn remark_aggregate(
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    let lhs = remark_lhs(f, rect, opts)?;
    let rhs = remark_rhs(bound, f, rect, s)?;
    let params = BoundParams::new(bound, rect, None, s, opts.mode);
    let mut report = BoundReport::new(
        TheoremId::remark_id(bound.family()),
        lhs,
        rhs,
        params,
        opts.abs_tol,
    );
    report.hypothesis_certified = hypothesis(bound, f, rect, s, opts)?;
    Ok(report)
}

/// Evaluates any corner, midpoint or aggregate id with the family's
/// parameters taken from `bound`.
pub fn special_report(
    id: TheoremId,
    bound: &Bound,
    f: &Surface,
    rect: &Rect,
    s: SExponent,
    opts: &BoundOptions,
) -> Option<Result<BoundReport>> {
    if let Some(c) = id.corner() {
        Some(corner_report(bound, c, f, rect, s, opts))
    } else if id.is_midpoint() {
        Some(midpoint_report(bound, f, rect, s, opts))
    } else if id.is_remark() {
        Some(remark_aggregate(bound, f, rect, s, opts))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::bound_rhs;
    use crate::domain::{make_rect, HolderPair, PowerMeanQ};
    use crate::surfaces::{catalog, lookup};
    use proptest::prelude::*;

    fn s(v: f64) -> SExponent {
        SExponent::new(v).unwrap()
    }

    fn all_bounds(q: f64) -> Vec<Bound> {
        let mut v = vec![Bound::T1];
        if q > 1.0 {
            v.push(Bound::T2 {
                holder: HolderPair::from_q(q).unwrap(),
            });
        }
        for constant in T3Constant::BOTH {
            v.push(Bound::T3 {
                q: PowerMeanQ::new(q).unwrap(),
                constant,
            });
        }
        v
    }

    #[test]
    fn constants_give_zero_everywhere() {
        let r = make_rect(0.0, 2.0, 0.0, 1.0).unwrap();
        let k = Surface::constant(4.0);
        let o = BoundOptions::default();
        for b in all_bounds(2.0) {
            for c in Corner::ALL {
                let rep = corner_report(&b, c, &k, &r, s(0.5), &o).unwrap();
                assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
            }
            let m = midpoint_report(&b, &k, &r, s(0.5), &o).unwrap();
            assert_eq!((m.lhs, m.rhs), (0.0, 0.0));
            let a = remark_aggregate(&b, &k, &r, s(0.5), &o).unwrap();
            assert_eq!((a.lhs, a.rhs), (0.0, 0.0));
        }
    }

    #[test]
    fn t1_corner_is_tight_for_bilinear() {
        let r = make_rect(0.0, 2.0, 0.0, 1.0).unwrap();
        let rep = corner_report(
            &Bound::T1,
            Corner::AC,
            &lookup("bilinear").unwrap(),
            &r,
            s(1.0),
            &BoundOptions::default(),
        )
        .unwrap();
        assert_eq!(rep.theorem_id, TheoremId::C1_1);
        assert!((rep.lhs - 0.5).abs() <= 1e-15);
        assert!((rep.rhs - 0.5).abs() <= 1e-15);
        assert!(rep.margin.abs() <= 1e-12 && rep.holds);
    }

    #[test]
    fn t2_corner_example() {
        let hp = HolderPair::from_q(2.0).unwrap();
        let rhs = corner_rhs(
            &Bound::T2 { holder: hp },
            &lookup("bilinear").unwrap(),
            &Rect::unit(),
            Corner::AC,
            s(1.0),
        )
        .unwrap();
        assert!((rhs - 1.0 / 3.0).abs() <= 1e-15);
    }

    #[test]
    fn midpoint_examples() {
        let uv = lookup("bilinear").unwrap();
        let o = BoundOptions::default();
        let m = midpoint_report(&Bound::T1, &uv, &Rect::unit(), s(1.0), &o).unwrap();
        assert_eq!(m.lhs, 0.0);
        assert!((m.rhs - 1.0 / 16.0).abs() <= 1e-15);
        assert!(m.holds);
        let one = PowerMeanQ::new(1.0).unwrap();
        for f in catalog() {
            let r = make_rect(0.5, 2.5, 1.0, 3.0).unwrap();
            let t1 = midpoint_rhs(&Bound::T1, &f.surface, &r, s(0.3)).unwrap();
            for constant in T3Constant::BOTH {
                let t3 =
                    midpoint_rhs(&Bound::T3 { q: one, constant }, &f.surface, &r, s(0.3)).unwrap();
                assert!((t1 - t3).abs() <= 1e-12 * t1.max(1.0));
            }
        }
    }

    #[test]
    fn midpoint_lhs_is_corner_edge_area_combination() {
        // ¼Σf(corners) − ½Σ(edge means) + area mean, computed directly.
        let f = lookup("power_2.5_3").unwrap();
        let r = make_rect(0.5, 2.5, 1.0, 3.0).unwrap();
        let p = f.as_power_sum().unwrap();
        let (a, b, c, d) = (r.a(), r.b(), r.c(), r.d());
        let corners: f64 = r.corners().iter().map(|k| p.eval(k.x, k.y)).sum();
        let edges = (p.integral_v(a, c, d) + p.integral_v(b, c, d)) / (d - c)
            + (p.integral_u(c, a, b) + p.integral_u(d, a, b)) / (b - a);
        let mean = p.integral_box(a, b, c, d) / r.area();
        let want = (corners / 4.0 - edges / 2.0 + mean).abs();
        let got = midpoint_lhs(&f, &r, &BoundOptions::default()).unwrap();
        assert!(
            (got - want).abs() <= 1e-12 * want.max(1.0),
            "{got} vs {want}"
        );
    }

    #[test]
    fn c15_coefficient_identity() {
        for i in 1..=100 {
            let sv = i as f64 / 100.0;
            let s1 = sv + 1.0;
            let lhs = (1.0 / (s1 * s1) + 2.0 / s1 + 1.0) / ((sv + 2.0) * (sv + 2.0));
            assert!((lhs - 1.0 / (s1 * s1)).abs() <= 1e-12);
        }
    }

    #[test]
    fn c15_example() {
        let r = make_rect(0.0, 2.0, 0.0, 1.0).unwrap();
        let uv = lookup("bilinear").unwrap();
        let o = BoundOptions::default();
        let agg = remark_aggregate(&Bound::T1, &uv, &r, s(1.0), &o).unwrap();
        assert!((agg.rhs - 4.0).abs() <= 1e-14);
        let corner_sum: f64 = Corner::ALL
            .iter()
            .map(|&c| {
                r.area()
                    * corner_report(&Bound::T1, c, &uv, &r, s(1.0), &o)
                        .unwrap()
                        .lhs
            })
            .sum();
        assert!((agg.lhs - corner_sum).abs() <= 1e-14);
        assert!(agg.holds);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn closed_forms_match_general_bounds(idx in 0usize..14, sv in 0.01f64..=1.0, qv in 1.0f64..6.0, a in 0.0f64..2.0, w in 0.25f64..3.0, c in 0.0f64..2.0, h in 0.25f64..3.0) {
            let f = &catalog()[idx].surface;
            let r = make_rect(a, a + w, c, c + h).unwrap();
            for b in all_bounds(qv) {
                for k in Corner::ALL {
                    let special = corner_rhs(&b, f, &r, k, s(sv)).unwrap();
                    let general = bound_rhs(&b, f, &r, r.corner(k), s(sv)).unwrap();
                    prop_assert!((special - general).abs() <= 1e-12 * general.abs().max(1.0), "{b:?} {k:?}: {special} vs {general}");
                }
                let special = midpoint_rhs(&b, f, &r, s(sv)).unwrap();
                let general = bound_rhs(&b, f, &r, r.midpoint(), s(sv)).unwrap();
                prop_assert!((special - general).abs() <= 1e-12 * general.abs().max(1.0), "{b:?} mid: {special} vs {general}");
            }
        }

        #[test]
        fn aggregate_equals_sum_of_corner_bounds(idx in 0usize..14, sv in 0.01f64..=1.0, qv in 1.0f64..6.0, a in 0.0f64..2.0, w in 0.25f64..3.0) {
            let f = &catalog()[idx].surface;
            let r = make_rect(a, a + w, 0.5, 2.0).unwrap();
            for b in all_bounds(qv) {
                let agg = remark_rhs(&b, f, &r, s(sv)).unwrap();
                let sum: f64 = Corner::ALL.iter().map(|&k| r.area() * corner_rhs(&b, f, &r, k, s(sv)).unwrap()).sum();
                prop_assert!((agg - sum).abs() <= 1e-12 * agg.abs().max(1.0), "{b:?}: {agg} vs {sum}");
            }
        }
    }
}
