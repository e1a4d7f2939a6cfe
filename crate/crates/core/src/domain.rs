//! Geometric and parameter types shared by every other module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `1/p + 1/q = 1` for a constructed [`HolderPair`].
pub const CONJUGACY_TOL: f64 = 1e-12;

/// The closed rectangle `[a, b] x [c, d]` with `a < b`, `c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

pub fn make_rect(a: f64, b: f64, c: f64, d: f64) -> Result<Rect> {
    Rect::new(a, b, c, d)
}

impl Rect {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let finite = [a, b, c, d].iter().all(|v| v.is_finite());
        // `!(a < b)` also rejects NaN.
        if !finite || !(a < b) || !(c < d) {
            return Err(Error::DegenerateRect { a, b, c, d });
        }
        Ok(Rect { a, b, c, d })
    }

    pub fn unit() -> Self {
        Rect {
            a: 0.0,
            b: 1.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn height(&self) -> f64 {
        self.d - self.c
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn midpoint(&self) -> EvalPoint {
        EvalPoint::new(0.5 * (self.a + self.b), 0.5 * (self.c + self.d))
    }

    /// Corners in the canonical order `(a,c), (a,d), (b,c), (b,d)`.
    pub fn corners(&self) -> [EvalPoint; 4] {
        Corner::ALL.map(|k| self.corner(k))
    }

    pub fn corner(&self, corner: Corner) -> EvalPoint {
        match corner {
            Corner::AC => EvalPoint::new(self.a, self.c),
            Corner::AD => EvalPoint::new(self.a, self.d),
            Corner::BC => EvalPoint::new(self.b, self.c),
            Corner::BD => EvalPoint::new(self.b, self.d),
        }
    }

    pub fn contains(&self, pt: EvalPoint) -> bool {
        self.a <= pt.x && pt.x <= self.b && self.c <= pt.y && pt.y <= self.d
    }

    pub fn check_point(&self, pt: EvalPoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::PointOutsideRect { x: pt.x, y: pt.y })
        }
    }

    /// True when the rectangle lies in `[0, inf)^2`.
    pub fn is_nonnegative(&self) -> bool {
        self.a >= 0.0 && self.c >= 0.0
    }

    /// `(n+1)^2` lattice points, x-index outer, boundary included.
    pub fn lattice(&self, n: usize) -> Vec<EvalPoint> {
        let n = n.max(1);
        let mut pts = Vec::with_capacity((n + 1) * (n + 1));
        for i in 0..=n {
            let x = lerp(self.a, self.b, i, n);
            for j in 0..=n {
                pts.push(EvalPoint::new(x, lerp(self.c, self.d, j, n)));
            }
        }
        pts
    }

    /// Strictly interior `k x k` grid at `i/(k+1)` fractions.
    pub fn interior_grid(&self, k: usize) -> Vec<EvalPoint> {
        let mut pts = Vec::with_capacity(k * k);
        for i in 1..=k {
            let x = lerp(self.a, self.b, i, k + 1);
            for j in 1..=k {
                pts.push(EvalPoint::new(x, lerp(self.c, self.d, j, k + 1)));
            }
        }
        pts
    }
}

// Endpoints are hit exactly.
fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if i == 0 {
        lo
    } else if i == n {
        hi
    } else {
        lo + (hi - lo) * (i as f64) / (n as f64)
    }
}

/// The four corners, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Corner {
    AC,
    AD,
    BC,
    BD,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::AC, Corner::AD, Corner::BC, Corner::BD];

    /// The diagonally opposite corner.
    pub fn opposite(self) -> Corner {
        match self {
            Corner::AC => Corner::BD,
            Corner::AD => Corner::BC,
            Corner::BC => Corner::AD,
            Corner::BD => Corner::AC,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Corner::AC => "ac",
            Corner::AD => "ad",
            Corner::BC => "bc",
            Corner::BD => "bd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub x: f64,
    pub y: f64,
}

impl EvalPoint {
    pub fn new(x: f64, y: f64) -> Self {
        EvalPoint { x, y }
    }
}

/// `s` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SExponent(f64);

impl SExponent {
    pub fn new(s: f64) -> Result<Self> {
        if s > 0.0 && s <= 1.0 {
            Ok(SExponent(s))
        } else {
            Err(Error::BadExponent(format!("s = {s} is outside (0, 1]")))
        }
    }

    pub fn one() -> Self {
        SExponent(1.0)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Conjugate exponents `1/p + 1/q = 1`, both `> 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderPair {
    pub p: f64,
    pub q: f64,
}

pub fn make_holder_pair(q: f64) -> Result<HolderPair> {
    HolderPair::from_q(q)
}

impl HolderPair {
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q > 1.0) || !q.is_finite() {
            return Err(Error::BadExponent(format!(
                "Hoelder exponent q = {q} must exceed 1"
            )));
        }
        let p = q / (q - 1.0);
        debug_assert!((1.0 / p + 1.0 / q - 1.0).abs() <= CONJUGACY_TOL);
        Ok(HolderPair { p, q })
    }
}

/// Power-mean exponent `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerMeanQ(f64);

impl PowerMeanQ {
    pub fn new(q: f64) -> Result<Self> {
        if q >= 1.0 && q.is_finite() {
            Ok(PowerMeanQ(q))
        } else {
            Err(Error::BadExponent(format!(
                "power-mean exponent q = {q} must be >= 1"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// How the corner term `A` of the identity is normalized.
///
/// `Verbatim` divides the corner-weighted sum by the area. `Corrected`
/// leaves it undivided; the identity holds only in this form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationMode {
    Verbatim,
    #[default]
    Corrected,
}

impl std::str::FromStr for NormalizationMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "verbatim" => Ok(NormalizationMode::Verbatim),
            "corrected" => Ok(NormalizationMode::Corrected),
            other => Err(format!(
                "unknown mode `{other}` (expected corrected|verbatim)"
            )),
        }
    }
}

impl std::fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NormalizationMode::Verbatim => "verbatim",
            NormalizationMode::Corrected => "corrected",
        })
    }
}
