//! Closed-form kernel constants that appear when the bounds are derived.

use serde::{Deserialize, Serialize};

use crate::domain::{PowerMeanQ, SExponent};

/// `∫_0^1 (1 - t) t^s dt = 1 / ((s + 1)(s + 2))`.
pub fn kernel_moment(s: SExponent) -> f64 {
    let s = s.get();
    1.0 / ((s + 1.0) * (s + 2.0))
}

/// `(∫_0^1 ∫_0^1 ((1 - t)(1 - λ))^p dλ dt)^{1/p} = (p + 1)^{-2/p}`.
pub fn holder_kernel_constant(p: f64) -> f64 {
    debug_assert!(p >= 1.0);
    (p + 1.0).powf(-2.0 / p)
}

/// Which leading constant to use in the power-mean bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum T3Constant {
    /// `2^{2 - 2/q}`.
    Verbatim,
    /// `2^{2/q - 2} = (1/4)^{1 - 1/q}`, what the power-mean step yields.
    Sharpened,
}

impl T3Constant {
    pub const BOTH: [T3Constant; 2] = [T3Constant::Verbatim, T3Constant::Sharpened];
}

impl std::str::FromStr for T3Constant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verbatim" => Ok(T3Constant::Verbatim),
            "sharpened" => Ok(T3Constant::Sharpened),
            other => Err(format!(
                "unknown T3 constant `{other}` (expected verbatim|sharpened)"
            )),
        }
    }
}

impl std::fmt::Display for T3Constant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            T3Constant::Verbatim => "verbatim",
            T3Constant::Sharpened => "sharpened",
        })
    }
}

pub fn power_mean_prefactor(q: PowerMeanQ, mode: T3Constant) -> f64 {
    let q = q.get();
    match mode {
        T3Constant::Verbatim => 2f64.powf(2.0 - 2.0 / q),
        T3Constant::Sharpened => 2f64.powf(2.0 / q - 2.0),
    }
}
