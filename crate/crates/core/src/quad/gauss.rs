//! Gauss-Legendre nodes and weights on `[-1, 1]`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `n` nodes; exact for polynomials of degree `2n - 1`.
    ///
    /// Roots are found by Newton iteration on the three-term recurrence,
    /// starting from the Tricomi approximation. The rule is symmetric, so
    /// only half the roots are iterated and the rest mirrored.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            // One more derivative evaluation at the converged root.
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integrate `g` over `[lo, hi]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut g: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * g(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<GaussLegendre>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared, lazily built rule of the given order.
pub fn rule(n: usize) -> Arc<GaussLegendre> {
    if let Some(r) = cache().read().expect("gauss cache poisoned").get(&n) {
        return Arc::clone(r);
    }
    let mut guard = cache().write().expect("gauss cache poisoned");
    Arc::clone(
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(GaussLegendre::new(n))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 3, 5, 8, 16, 32, 64] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n = {n}: {s}");
        }
    }

    #[test]
    fn nodes_sorted_and_symmetric() {
        let r = GaussLegendre::new(7);
        for w in r.nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        for i in 0..7 {
            assert!((r.nodes[i] + r.nodes[6 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_on_monomials_up_to_2n_minus_1() {
        let n = 6;
        let r = GaussLegendre::new(n);
        for k in 0..(2 * n) {
            let got = r.integrate(0.0, 1.0, |x| x.powi(k as i32));
            let want = 1.0 / (k as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "degree {k}: {got} vs {want}");
        }
    }

    #[test]
    fn two_point_rule() {
        let r = GaussLegendre::new(2);
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cache_returns_same_rule() {
        let a = rule(12);
        let b = rule(12);
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(*a, GaussLegendre::new(12));
    }
}
