//! The identity for polynomials, evaluated in rational arithmetic.

use num_traits::Zero;

use crate::domain::{EvalPoint, NormalizationMode, Rect};
use crate::quad::exact::{
    kernel_integral_exact, poly_eval_exact, poly_integral_exact, poly_integral_u_exact,
    poly_integral_v_exact, q, RationalRect, Q,
};
use crate::surfaces::Poly2;

/// Left side; `x` and `y` must lie in the rectangle.
pub fn lhs_exact(p: &Poly2, r: &RationalRect, x: &Q, y: &Q, mode: NormalizationMode) -> Q {
    let area = r.area();
    let (l, rt) = (x - &r.a, &r.b - x);
    let (lo, hi) = (y - &r.c, &r.d - y);
    let mut a_term = &l * &lo * poly_eval_exact(p, &r.a, &r.c)
        + &l * &hi * poly_eval_exact(p, &r.a, &r.d)
        + &rt * &lo * poly_eval_exact(p, &r.b, &r.c)
        + &rt * &hi * poly_eval_exact(p, &r.b, &r.d);
    if mode == NormalizationMode::Verbatim {
        a_term /= &area;
    }
    let bracket = a_term
        - &l * poly_integral_v_exact(p, &r.a, &r.c, &r.d)
        - &rt * poly_integral_v_exact(p, &r.b, &r.c, &r.d)
        - &hi * poly_integral_u_exact(p, &r.d, &r.a, &r.b)
        - &lo * poly_integral_u_exact(p, &r.c, &r.a, &r.b)
        + poly_integral_exact(p, r);
    bracket / area
}

/// Right side. Each quadrant integral is expanded binomially around the
/// quadrant's corner, so no quadrature is involved.
pub fn rhs_exact(p: &Poly2, r: &RationalRect, x: &Q, y: &Q) -> Q {
    let d = p.mixed_partial();
    let area = r.area();
    let mut total = Q::zero();
    // (u-base, v-base, sign of the kernel relative to (1-t)(1-λ))
    let quadrants = [
        (&r.a, &r.c, 1),
        (&r.a, &r.d, -1),
        (&r.b, &r.c, -1),
        (&r.b, &r.d, 1),
    ];
    for (u0, v0, sign) in quadrants {
        let hu = x - u0;
        let hv = y - v0;
        if hu.is_zero() || hv.is_zero() {
            continue;
        }
        let coef = &hu * &hu * &hv * &hv / &area;
        let term = coef * kernel_integral_exact(&d, u0, &hu, v0, &hv);
        if sign > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactLemma {
    pub lhs: Q,
    pub rhs: Q,
}

impl ExactLemma {
    pub fn residual(&self) -> Q {
        let d = &self.lhs - &self.rhs;
        if d < Q::zero() {
            -d
        } else {
            d
        }
    }
}

pub fn lemma_exact(p: &Poly2, rect: &Rect, pt: EvalPoint, mode: NormalizationMode) -> ExactLemma {
    let r = RationalRect::from_rect(rect);
    let (x, y) = (q(pt.x), q(pt.y));
    ExactLemma {
        lhs: lhs_exact(p, &r, &x, &y, mode),
        rhs: rhs_exact(p, &r, &x, &y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::make_rect;
    use crate::quad::exact::{q_int, to_f64};
    use proptest::prelude::*;

    #[test]
    fn bilinear_example_is_one_half() {
        let uv = Poly2::monomial(1.0, 1, 1).unwrap();
        let r = make_rect(0.0, 2.0, 0.0, 1.0).unwrap();
        let ev = lemma_exact(
            &uv,
            &r,
            EvalPoint::new(0.0, 0.0),
            NormalizationMode::Corrected,
        );
        assert_eq!(ev.lhs, Q::new(1.into(), 2.into()));
        assert_eq!(ev.rhs, ev.lhs);
    }

    #[test]
    fn verbatim_constant_residual() {
        let one = Poly2::constant(1.0);
        let r = make_rect(0.0, 2.0, 0.0, 1.0).unwrap();
        for pt in r.interior_grid(3) {
            let ev = lemma_exact(&one, &r, pt, NormalizationMode::Verbatim);
            assert_eq!(ev.residual(), Q::new(1.into(), 2.into()));
            assert!(lemma_exact(&one, &r, pt, NormalizationMode::Corrected)
                .residual()
                .is_zero());
        }
        let ev = lemma_exact(
            &one,
            &Rect::unit(),
            EvalPoint::new(0.25, 0.75),
            NormalizationMode::Verbatim,
        );
        assert!(ev.residual().is_zero());
    }

    #[test]
    fn exact_rhs_matches_quadrature() {
        let p = Poly2::new(vec![
            vec![1.0, -2.0, 0.0, 3.0],
            vec![0.0, 1.0, 2.0],
            vec![-1.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        let r = make_rect(-1.0, 1.0, -0.5, 0.5).unwrap();
        let s = crate::surfaces::Surface::polynomial("p", p.clone());
        let cfg = crate::quad::QuadConfig::default();
        for pt in r.interior_grid(3) {
            let ex = lemma_exact(&p, &r, pt, NormalizationMode::Corrected);
            let num = super::super::lemma_rhs(&s, &r, pt, &cfg).unwrap();
            assert!((to_f64(&ex.rhs) - num).abs() <= 1e-12);
        }
    }

    fn small_poly() -> impl Strategy<Value = Poly2> {
        proptest::collection::vec(proptest::collection::vec(-3i32..=3, 5), 5).prop_map(|rows| {
            Poly2::new(
                rows.into_iter()
                    .map(|r| r.into_iter().map(f64::from).collect())
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn corrected_identity_is_exact(p in small_poly(), a in -8i32..8, w in 1i32..8, c in -8i32..8, h in 1i32..8, i in 0i32..=8, j in 0i32..=8) {
            let r = make_rect(f64::from(a) / 4.0, f64::from(a + w) / 4.0, f64::from(c) / 4.0, f64::from(c + h) / 4.0).unwrap();
            let pt = EvalPoint::new(r.a() + r.width() * f64::from(i) / 8.0, r.c() + r.height() * f64::from(j) / 8.0);
            let ev = lemma_exact(&p, &r, pt, NormalizationMode::Corrected);
            prop_assert_eq!(ev.lhs, ev.rhs);
        }

        #[test]
        fn constants_annihilate(k in -100i32..100, a in -8i32..8, w in 1i32..8, i in 0i32..=4) {
            let r = make_rect(f64::from(a), f64::from(a + w), 0.0, 1.5).unwrap();
            let pt = EvalPoint::new(r.a() + r.width() * f64::from(i) / 4.0, 0.75);
            let ev = lemma_exact(&Poly2::constant(f64::from(k)), &r, pt, NormalizationMode::Corrected);
            prop_assert_eq!(ev.lhs, q_int(0));
        }
    }
}
