//! Exact rational integration of [`Poly2`] over rectangles.
//!
//! Every finite `f64` is a dyadic rational, so coordinates and coefficients
//! convert without loss and the results carry no rounding at all.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::domain::Rect;
use crate::surfaces::Poly2;

pub type Q = BigRational;

/// Exact value of a finite float.
pub fn q(x: f64) -> Q {
    BigRational::from_float(x).expect("finite value")
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRect {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
}

impl RationalRect {
    pub fn from_rect(r: &Rect) -> Self {
        RationalRect {
            a: q(r.a()),
            b: q(r.b()),
            c: q(r.c()),
            d: q(r.d()),
        }
    }

    pub fn area(&self) -> Q {
        (&self.b - &self.a) * (&self.d - &self.c)
    }
}

fn pow(x: &Q, n: usize) -> Q {
    let mut acc = Q::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// `∫_lo^hi x^n dx`.
fn pow_integral(n: usize, lo: &Q, hi: &Q) -> Q {
    (pow(hi, n + 1) - pow(lo, n + 1)) / q_int(n as i64 + 1)
}

fn sum_terms<F: Fn(usize, usize) -> Q>(p: &Poly2, term: F) -> Q {
    let mut acc = Q::zero();
    for (c, i, j) in p.terms() {
        acc += q(c) * term(i, j);
    }
    acc
}

pub fn poly_eval_exact(p: &Poly2, u: &Q, v: &Q) -> Q {
    sum_terms(p, |i, j| pow(u, i) * pow(v, j))
}

/// `∫_c^d p(u0, v) dv`.
pub fn poly_integral_v_exact(p: &Poly2, u0: &Q, c: &Q, d: &Q) -> Q {
    sum_terms(p, |i, j| pow(u0, i) * pow_integral(j, c, d))
}

/// `∫_a^b p(u, v0) du`.
pub fn poly_integral_u_exact(p: &Poly2, v0: &Q, a: &Q, b: &Q) -> Q {
    sum_terms(p, |i, j| pow_integral(i, a, b) * pow(v0, j))
}

/// `∫_a^b ∫_c^d p(u, v) dv du`.
pub fn poly_integral_exact(p: &Poly2, rect: &RationalRect) -> Q {
    sum_terms(p, |i, j| {
        pow_integral(i, &rect.a, &rect.b) * pow_integral(j, &rect.c, &rect.d)
    })
}

/// `∫_0^1 (1 - t) t^k dt = 1 / ((k + 1)(k + 2))`.
pub fn kernel_moment_exact(k: usize) -> Q {
    Q::new(BigInt::one(), BigInt::from((k as i64 + 1) * (k as i64 + 2)))
}

fn binomial(n: usize, k: usize) -> Q {
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * q_int((n - i) as i64) / q_int(i as i64 + 1);
    }
    acc
}

/// `∫_0^1 (1 - t) (base + t h)^n dt`, expanded binomially.
fn weighted_power(base: &Q, h: &Q, n: usize) -> Q {
    let mut acc = Q::zero();
    for k in 0..=n {
        acc += binomial(n, k) * pow(base, n - k) * pow(h, k) * kernel_moment_exact(k);
    }
    acc
}

/// `∫_0^1 ∫_0^1 (1 - t)(1 - λ) p(u0 + t hu, v0 + λ hv) dλ dt`.
pub fn kernel_integral_exact(p: &Poly2, u0: &Q, hu: &Q, v0: &Q, hv: &Q) -> Q {
    sum_terms(p, |i, j| {
        weighted_power(u0, hu, i) * weighted_power(v0, hv, j)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_2d, QuadConfig};
    use proptest::prelude::*;

    fn rr(a: f64, b: f64, c: f64, d: f64) -> RationalRect {
        RationalRect::from_rect(&Rect::new(a, b, c, d).unwrap())
    }

    fn frac(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn worked_examples() {
        let uv = Poly2::monomial(1.0, 1, 1).unwrap();
        let q2 = Poly2::monomial(1.0, 2, 2).unwrap();
        assert_eq!(
            poly_integral_exact(&uv, &rr(0.0, 1.0, 0.0, 1.0)),
            frac(1, 4)
        );
        assert_eq!(
            poly_integral_exact(&q2, &rr(0.0, 1.0, 0.0, 1.0)),
            frac(1, 9)
        );
        assert_eq!(
            poly_integral_exact(&uv, &rr(0.0, 2.0, 0.0, 1.0)),
            frac(1, 1)
        );
    }

    #[test]
    fn edge_integrals() {
        let uv = Poly2::monomial(1.0, 1, 1).unwrap();
        assert_eq!(
            poly_integral_v_exact(&uv, &q(2.0), &q(0.0), &q(1.0)),
            frac(1, 1)
        );
        assert_eq!(
            poly_integral_u_exact(&uv, &q(1.0), &q(0.0), &q(2.0)),
            frac(2, 1)
        );
        assert_eq!(poly_eval_exact(&uv, &q(0.5), &q(0.25)), frac(1, 8));
    }

    #[test]
    fn conversion_is_exact() {
        assert_eq!(q(0.1) * q_int(10), q(0.1) * q_int(10));
        assert_ne!(q(0.1), frac(1, 10));
        assert_eq!(q(0.375), frac(3, 8));
        assert_eq!(to_f64(&frac(1, 3)), 1.0 / 3.0);
    }

    #[test]
    fn kernel_integral_constant_and_linear() {
        // kernel alone integrates to 1/4; with u it picks up u0/4 + hu/24
        let one = Poly2::constant(1.0);
        assert_eq!(
            kernel_integral_exact(&one, &q(3.0), &q(1.0), &q(5.0), &q(2.0)),
            frac(1, 4)
        );
        let u = Poly2::monomial(1.0, 1, 0).unwrap();
        let got = kernel_integral_exact(&u, &q(1.0), &q(2.0), &q(0.0), &q(1.0));
        assert_eq!(got, frac(1, 2) * (frac(1, 2) + frac(2, 6)));
    }

    fn small_poly() -> impl Strategy<Value = Poly2> {
        proptest::collection::vec(proptest::collection::vec(-3i32..=3, 4), 4).prop_map(|rows| {
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
        fn quadrature_agrees_with_oracle(p in small_poly(), a in -4i32..4, w in 1i32..5, c in -4i32..4, h in 1i32..5) {
            let (a, b) = (f64::from(a) / 4.0, f64::from(a + w) / 4.0);
            let (c, d) = (f64::from(c) / 4.0, f64::from(c + h) / 4.0);
            let rect = Rect::new(a, b, c, d).unwrap();
            let exact = to_f64(&poly_integral_exact(&p, &RationalRect::from_rect(&rect)));
            let num = integrate_2d(|u, v| p.eval(u, v), &rect, &QuadConfig::default()).unwrap().value;
            prop_assert!((exact - num).abs() <= 1e-11 * exact.abs().max(1.0), "{exact} vs {num}");
        }
    }
}
