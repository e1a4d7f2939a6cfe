//! Sampling-based falsification of s-convexity in the second sense.
//!
//! A `NoCounterexampleFound` verdict is not a proof; it only records that
//! the sampler found no violation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{Rect, SExponent};
use crate::error::{Error, Result};

/// Violations must exceed this absolute amount.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Number of interior λ grid points, `λ = k/16` for `k = 1..=15`.
const LAMBDA_STEPS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Number of random pairs drawn.
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            samples: 10_000,
            seed: 0x5eed,
            tol: VIOLATION_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NoCounterexampleFound,
    Counterexample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `g(λx₁ + (1-λ)x₂) > λ^s g(x₁) + (1-λ)^s g(x₂)`.
    Inequality,
    /// `g(x₁) < 0`, outside the non-negative family the definition covers.
    NegativeValue,
    /// `g` was not finite at a sampled point.
    NonFinite,
}

/// Which one-dimensional section a witness lives on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    /// A plain function of one variable.
    Line,
    /// `u ↦ g(u, v0)`.
    Horizontal { v0: f64 },
    /// `v ↦ g(u0, v)`.
    Vertical { u0: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: ViolationKind,
    pub section: Section,
    pub x1: f64,
    pub x2: f64,
    pub lambda: f64,
    /// Amount by which the requirement is violated (positive).
    pub slack: f64,
}

impl Witness {
    /// Recomputes the violation amount for a one-variable function.
    pub fn replay<G: Fn(f64) -> f64>(&self, g: G, s: SExponent) -> f64 {
        match self.kind {
            ViolationKind::NegativeValue => -g(self.x1),
            ViolationKind::NonFinite => {
                if g(self.x1).is_finite() {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            ViolationKind::Inequality => {
                inequality_slack(&g, self.x1, self.x2, self.lambda, s.get())
            }
        }
    }

    /// Recomputes the violation amount on the stored section of `f`.
    pub fn replay_2d<F: Fn(f64, f64) -> f64>(&self, f: F, s: SExponent) -> f64 {
        match self.section {
            Section::Line => f64::NAN,
            Section::Horizontal { v0 } => self.replay(|u| f(u, v0), s),
            Section::Vertical { u0 } => self.replay(|v| f(u0, v), s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub samples_used: usize,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::NoCounterexampleFound
    }
}

fn inequality_slack<G: Fn(f64) -> f64>(g: &G, x1: f64, x2: f64, lambda: f64, s: f64) -> f64 {
    let mid = g(lambda * x1 + (1.0 - lambda) * x2);
    mid - (lambda.powf(s) * g(x1) + (1.0 - lambda).powf(s) * g(x2))
}

/// Checks one pair against every λ on the grid; returns the worst violation.
fn check_pair<G: Fn(f64) -> f64>(
    g: &G,
    x1: f64,
    x2: f64,
    s: f64,
    tol: f64,
    section: Section,
) -> Option<Witness> {
    for x in [x1, x2] {
        let gx = g(x);
        if !gx.is_finite() {
            return Some(Witness {
                kind: ViolationKind::NonFinite,
                section,
                x1: x,
                x2: x,
                lambda: 1.0,
                slack: f64::INFINITY,
            });
        }
        if gx < -tol {
            return Some(Witness {
                kind: ViolationKind::NegativeValue,
                section,
                x1: x,
                x2: x,
                lambda: 1.0,
                slack: -gx,
            });
        }
    }
    let mut worst: Option<Witness> = None;
    for k in 1..LAMBDA_STEPS {
        let lambda = f64::from(k) / f64::from(LAMBDA_STEPS);
        let slack = inequality_slack(g, x1, x2, lambda, s);
        if slack > tol && worst.is_none_or(|w| slack > w.slack) {
            worst = Some(Witness {
                kind: ViolationKind::Inequality,
                section,
                x1,
                x2,
                lambda,
                slack,
            });
        }
    }
    worst
}

/// Searches random pairs in `[lo, hi]` for a violation of
/// `g(λx₁ + (1-λ)x₂) <= λ^s g(x₁) + (1-λ)^s g(x₂)` or of `g >= 0`.
pub fn certify_s_convex_second_sense<G: Fn(f64) -> f64>(
    g: G,
    s: SExponent,
    lo: f64,
    hi: f64,
    cfg: &SamplerConfig,
) -> CertificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.samples {
        let x1 = rng.gen_range(lo..=hi);
        let x2 = rng.gen_range(lo..=hi);
        if let Some(w) = check_pair(&g, x1, x2, s.get(), cfg.tol, Section::Line) {
            return CertificationReport {
                verdict: Verdict::Counterexample,
                witness: Some(w),
                samples_used: i + 1,
            };
        }
    }
    CertificationReport {
        verdict: Verdict::NoCounterexampleFound,
        witness: None,
        samples_used: cfg.samples,
    }
}

/// Applies the one-variable search to random horizontal and vertical
/// sections of `g` over `rect`, alternating orientation per sample.
///
/// The rectangle must lie in `[0, inf)^2`.
pub fn certify_coordinated<F: Fn(f64, f64) -> f64>(
    g: F,
    rect: &Rect,
    s: SExponent,
    cfg: &SamplerConfig,
) -> Result<CertificationReport> {
    if !rect.is_nonnegative() {
        return Err(Error::NegativeDomain {
            a: rect.a(),
            c: rect.c(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.samples {
        let found = if i % 2 == 0 {
            let v0 = rng.gen_range(rect.c()..=rect.d());
            let x1 = rng.gen_range(rect.a()..=rect.b());
            let x2 = rng.gen_range(rect.a()..=rect.b());
            check_pair(
                &|u| g(u, v0),
                x1,
                x2,
                s.get(),
                cfg.tol,
                Section::Horizontal { v0 },
            )
        } else {
            let u0 = rng.gen_range(rect.a()..=rect.b());
            let x1 = rng.gen_range(rect.c()..=rect.d());
            let x2 = rng.gen_range(rect.c()..=rect.d());
            check_pair(
                &|v| g(u0, v),
                x1,
                x2,
                s.get(),
                cfg.tol,
                Section::Vertical { u0 },
            )
        };
        if let Some(w) = found {
            return Ok(CertificationReport {
                verdict: Verdict::Counterexample,
                witness: Some(w),
                samples_used: i + 1,
            });
        }
    }
    Ok(CertificationReport {
        verdict: Verdict::NoCounterexampleFound,
        witness: None,
        samples_used: cfg.samples,
    })
}
