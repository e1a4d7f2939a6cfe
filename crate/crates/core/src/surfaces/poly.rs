//! Coefficient-level surface families: dense bivariate polynomials and sums
//! of power products with real exponents.

use serde::{Deserialize, Serialize};

/// Maximum degree per variable of a [`Poly2`].
pub const MAX_DEGREE: usize = 8;

/// Dense polynomial `Σ c[i][j] u^i v^j` with `i, j <= MAX_DEGREE`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly2 {
    coeffs: Vec<Vec<f64>>,
}

impl Poly2 {
    /// Builds from a coefficient grid indexed `[u-degree][v-degree]`.
    /// Returns `None` when a degree exceeds [`MAX_DEGREE`].
    pub fn new(coeffs: Vec<Vec<f64>>) -> Option<Self> {
        if coeffs.len() > MAX_DEGREE + 1 || coeffs.iter().any(|row| row.len() > MAX_DEGREE + 1) {
            return None;
        }
        let width = coeffs.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let mut grid: Vec<Vec<f64>> = coeffs
            .into_iter()
            .map(|mut row| {
                row.resize(width, 0.0);
                row
            })
            .collect();
        if grid.is_empty() {
            grid.push(vec![0.0; width]);
        }
        Some(Poly2 { coeffs: grid })
    }

    pub fn zero() -> Self {
        Poly2 {
            coeffs: vec![vec![0.0]],
        }
    }

    pub fn constant(k: f64) -> Self {
        Poly2 {
            coeffs: vec![vec![k]],
        }
    }

    /// `k u^i v^j`.
    pub fn monomial(k: f64, i: usize, j: usize) -> Option<Self> {
        let mut grid = vec![vec![0.0; j + 1]; i + 1];
        grid[i][j] = k;
        Poly2::new(grid)
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn deg_u(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn deg_v(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        let mut acc = 0.0;
        for row in self.coeffs.iter().rev() {
            let mut inner = 0.0;
            for c in row.iter().rev() {
                inner = inner * v + c;
            }
            acc = acc * u + inner;
        }
        acc
    }

    /// Coefficients of `∂²/∂u∂v`: `c'[i][j] = (i+1)(j+1) c[i+1][j+1]`.
    pub fn mixed_partial(&self) -> Poly2 {
        let du = self.deg_u();
        let dv = self.deg_v();
        if du == 0 || dv == 0 {
            return Poly2::zero();
        }
        let mut grid = vec![vec![0.0; dv]; du];
        for (i, row) in grid.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = ((i + 1) * (j + 1)) as f64 * self.coeffs[i + 1][j + 1];
            }
        }
        Poly2 { coeffs: grid }
    }

    /// Non-zero terms as `(coefficient, u-degree, v-degree)`.
    pub fn terms(&self) -> impl Iterator<Item = (f64, usize, usize)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0.0)
                .map(move |(j, c)| (*c, i, j))
        })
    }

    pub fn scaled(&self, k: f64) -> Poly2 {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|c| c * k).collect())
                .collect(),
        }
    }
}

/// One term `coef * u^pu * v^pv` with real, non-negative exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub coef: f64,
    pub pu: f64,
    pub pv: f64,
}

/// `Σ coef u^pu v^pv`: a generalized polynomial closed under the mixed
/// partial and with a closed-form antiderivative.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PowerSum {
    pub terms: Vec<PowerTerm>,
}

fn pow(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

/// `∫_lo^hi x^e dx` for `e >= 0`.
fn pow_integral(e: f64, lo: f64, hi: f64) -> f64 {
    (pow(hi, e + 1.0) - pow(lo, e + 1.0)) / (e + 1.0)
}

impl PowerSum {
    pub fn constant(k: f64) -> Self {
        PowerSum {
            terms: vec![PowerTerm {
                coef: k,
                pu: 0.0,
                pv: 0.0,
            }],
        }
        .normalized()
    }

    pub fn term(coef: f64, pu: f64, pv: f64) -> Self {
        PowerSum {
            terms: vec![PowerTerm { coef, pu, pv }],
        }
        .normalized()
    }

    /// Merges equal exponent pairs, drops zero terms, sorts by exponents.
    pub fn normalized(mut self) -> Self {
        self.terms
            .sort_by(|x, y| x.pu.total_cmp(&y.pu).then(x.pv.total_cmp(&y.pv)));
        let mut out: Vec<PowerTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            match out.last_mut() {
                Some(last) if last.pu == t.pu && last.pv == t.pv => last.coef += t.coef,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0.0);
        PowerSum { terms: out }
    }

    pub fn add(&self, other: &PowerSum) -> PowerSum {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        PowerSum { terms }.normalized()
    }

    pub fn scale(&self, k: f64) -> PowerSum {
        PowerSum {
            terms: self
                .terms
                .iter()
                .map(|t| PowerTerm {
                    coef: t.coef * k,
                    ..*t
                })
                .collect(),
        }
        .normalized()
    }

    pub fn mul(&self, other: &PowerSum) -> PowerSum {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for x in &self.terms {
            for y in &other.terms {
                terms.push(PowerTerm {
                    coef: x.coef * y.coef,
                    pu: x.pu + y.pu,
                    pv: x.pv + y.pv,
                });
            }
        }
        PowerSum { terms }.normalized()
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * pow(u, t.pu) * pow(v, t.pv))
            .sum()
    }

    pub fn mixed_partial(&self) -> PowerSum {
        PowerSum {
            terms: self
                .terms
                .iter()
                .filter(|t| t.pu != 0.0 && t.pv != 0.0)
                .map(|t| PowerTerm {
                    coef: t.coef * t.pu * t.pv,
                    pu: t.pu - 1.0,
                    pv: t.pv - 1.0,
                })
                .collect(),
        }
        .normalized()
    }

    pub fn is_integer(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.pu.fract() == 0.0 && t.pv.fract() == 0.0)
    }

    /// Converts to a dense polynomial when every exponent is an integer no
    /// larger than [`MAX_DEGREE`].
    pub fn to_poly(&self) -> Option<Poly2> {
        if !self.is_integer() {
            return None;
        }
        let du = self.terms.iter().map(|t| t.pu as usize).max().unwrap_or(0);
        let dv = self.terms.iter().map(|t| t.pv as usize).max().unwrap_or(0);
        if du > MAX_DEGREE || dv > MAX_DEGREE {
            return None;
        }
        let mut grid = vec![vec![0.0; dv + 1]; du + 1];
        for t in &self.terms {
            grid[t.pu as usize][t.pv as usize] += t.coef;
        }
        Poly2::new(grid)
    }

    pub fn from_poly(p: &Poly2) -> PowerSum {
        PowerSum {
            terms: p
                .terms()
                .map(|(coef, i, j)| PowerTerm {
                    coef,
                    pu: i as f64,
                    pv: j as f64,
                })
                .collect(),
        }
        .normalized()
    }

    /// `∫_c^d g(u0, v) dv`.
    pub fn integral_v(&self, u0: f64, c: f64, d: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * pow(u0, t.pu) * pow_integral(t.pv, c, d))
            .sum()
    }

    /// `∫_a^b g(u, v0) du`.
    pub fn integral_u(&self, v0: f64, a: f64, b: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * pow_integral(t.pu, a, b) * pow(v0, t.pv))
            .sum()
    }

    /// `∫_a^b ∫_c^d g(u, v) dv du`.
    pub fn integral_box(&self, a: f64, b: f64, c: f64, d: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * pow_integral(t.pu, a, b) * pow_integral(t.pv, c, d))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn poly_eval_and_mixed_partial() {
        let p = Poly2::monomial(1.0, 2, 2).unwrap();
        assert_eq!(p.eval(1.0, 1.0), 1.0);
        assert_eq!(p.eval(2.0, 3.0), 36.0);
        let d = p.mixed_partial();
        assert_eq!(d.eval(0.5, 2.0), 4.0 * 0.5 * 2.0);
        let cubic = Poly2::monomial(1.0, 3, 3).unwrap();
        assert_eq!(cubic.mixed_partial().eval(1.0, 1.0), 9.0);
        assert_eq!(Poly2::constant(3.0).mixed_partial().eval(1.0, 1.0), 0.0);
    }

    #[test]
    fn degree_cap() {
        assert!(Poly2::monomial(1.0, 8, 8).is_some());
        assert!(Poly2::monomial(1.0, 9, 0).is_none());
    }

    #[test]
    fn power_sum_roundtrip_through_poly() {
        let s = PowerSum::term(2.0, 1.0, 1.0)
            .add(&PowerSum::term(-1.0, 3.0, 0.0))
            .add(&PowerSum::constant(4.0));
        let p = s.to_poly().unwrap();
        assert_eq!(PowerSum::from_poly(&p), s);
        assert!(PowerSum::term(1.0, 2.5, 1.0).to_poly().is_none());
    }

    #[test]
    fn merging_cancels_terms() {
        let s = PowerSum::term(1.0, 1.0, 1.0).add(&PowerSum::term(-1.0, 1.0, 1.0));
        assert!(s.terms.is_empty());
        assert_eq!(s.eval(3.0, 4.0), 0.0);
    }

    #[test]
    fn closed_form_integrals() {
        let uv = PowerSum::term(1.0, 1.0, 1.0);
        assert!((uv.integral_box(0.0, 1.0, 0.0, 1.0) - 0.25).abs() < 1e-16);
        assert!((uv.integral_box(0.0, 2.0, 0.0, 1.0) - 1.0).abs() < 1e-16);
        assert!((uv.integral_v(2.0, 0.0, 1.0) - 1.0).abs() < 1e-16);
        let root = PowerSum::term(1.0, 0.5, 0.0);
        assert!((root.integral_u(7.0, 0.0, 1.0) - 2.0 / 3.0).abs() < 1e-16);
    }

    fn small_poly() -> impl Strategy<Value = Poly2> {
        proptest::collection::vec(proptest::collection::vec(-3i32..=3, 4), 4).prop_map(|g| {
            Poly2::new(
                g.into_iter()
                    .map(|r| r.into_iter().map(f64::from).collect())
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        // Mixed partial coefficients agree with a central cross difference.
        #[test]
        fn mixed_partial_matches_finite_difference(p in small_poly(), u in -1.5f64..1.5, v in -1.5f64..1.5) {
            let h = 1e-4;
            let fd = (p.eval(u + h, v + h) - p.eval(u + h, v - h) - p.eval(u - h, v + h) + p.eval(u - h, v - h)) / (4.0 * h * h);
            let exact = p.mixed_partial().eval(u, v);
            prop_assert!((fd - exact).abs() <= 1e-5 * exact.abs().max(1.0), "fd {} exact {}", fd, exact);
        }

        #[test]
        fn power_sum_matches_poly(p in small_poly(), u in -2.0f64..2.0, v in -2.0f64..2.0) {
            let s = PowerSum::from_poly(&p);
            prop_assert!((s.eval(u, v) - p.eval(u, v)).abs() <= 1e-12 * p.eval(u, v).abs().max(1.0));
            prop_assert!((s.mixed_partial().eval(u, v) - p.mixed_partial().eval(u, v)).abs() <= 1e-11 * p.mixed_partial().eval(u, v).abs().max(1.0));
        }
    }
}
