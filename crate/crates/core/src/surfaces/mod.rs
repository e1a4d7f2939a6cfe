//! Bivariate functions `f(u, v)` with access to the mixed partial
//! `∂²f/∂u∂v`, plus the catalog, the expression parser and the sampling
//! certifier for s-convexity.

pub mod catalog;
pub mod certify;
pub mod dsl;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use catalog::{catalog, lookup, CatalogEntry};
pub use certify::{
    certify_coordinated, certify_s_convex_second_sense, CertificationReport, SamplerConfig,
};
pub use dsl::Expr;
pub use poly::{Poly2, PowerSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    /// Integer exponents; exact mixed partial and rational integration.
    Polynomial,
    /// Real exponents; exact mixed partial and closed-form integrals.
    PowerProduct,
    /// Closure with an analytic mixed partial supplied by the caller.
    Expression,
    /// Mixed partial estimated by finite differences.
    NumericOnly,
}

type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Poly { f: Poly2, d: Poly2 },
    Power { f: PowerSum, d: PowerSum },
    Closure { f: Fn2, d: Option<Fn2> },
    Ast(Expr),
}

/// An immutable, shareable bivariate function.
#[derive(Clone)]
pub struct Surface {
    label: String,
    repr: Repr,
}

impl fmt::Debug for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Surface")
            .field("label", &self.label)
            .field("kind", &self.kind())
            .finish()
    }
}

/// Finite-difference step for coordinate `x`.
pub fn fd_step(x: f64) -> f64 {
    (1e-4 * x.abs()).max(1e-4)
}

/// Symmetric four-point cross difference for `∂²g/∂u∂v`.
pub fn cross_difference<F: Fn(f64, f64) -> f64>(g: F, u: f64, v: f64) -> f64 {
    let hu = fd_step(u);
    let hv = fd_step(v);
    (g(u + hu, v + hv) - g(u + hu, v - hv) - g(u - hu, v + hv) + g(u - hu, v - hv))
        / (4.0 * hu * hv)
}

fn finite(x: f64, u: f64, v: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Eval { u, v })
    }
}

impl Surface {
    pub fn polynomial(label: impl Into<String>, p: Poly2) -> Self {
        let d = p.mixed_partial();
        Surface {
            label: label.into(),
            repr: Repr::Poly { f: p, d },
        }
    }

    /// Power sums with only integer exponents become [`SurfaceKind::Polynomial`].
    pub fn power_sum(label: impl Into<String>, s: PowerSum) -> Self {
        match s.to_poly() {
            Some(p) => Surface::polynomial(label, p),
            None => {
                let d = s.mixed_partial();
                Surface {
                    label: label.into(),
                    repr: Repr::Power { f: s, d },
                }
            }
        }
    }

    pub fn constant(k: f64) -> Self {
        Surface::polynomial(format!("{k}"), Poly2::constant(k))
    }

    /// A closure with an analytic mixed partial.
    pub fn from_fns<F, D>(label: impl Into<String>, f: F, d: D) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Surface {
            label: label.into(),
            repr: Repr::Closure {
                f: Arc::new(f),
                d: Some(Arc::new(d)),
            },
        }
    }

    /// A closure whose mixed partial is estimated by finite differences.
    pub fn numeric<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Surface {
            label: label.into(),
            repr: Repr::Closure {
                f: Arc::new(f),
                d: None,
            },
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> SurfaceKind {
        match &self.repr {
            Repr::Poly { .. } => SurfaceKind::Polynomial,
            Repr::Power { .. } => SurfaceKind::PowerProduct,
            Repr::Closure { d: Some(_), .. } => SurfaceKind::Expression,
            Repr::Closure { d: None, .. } | Repr::Ast(_) => SurfaceKind::NumericOnly,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly2> {
        match &self.repr {
            Repr::Poly { f, .. } => Some(f),
            _ => None,
        }
    }

    /// Closed-form representation, when one exists.
    pub fn as_power_sum(&self) -> Option<PowerSum> {
        match &self.repr {
            Repr::Poly { f, .. } => Some(PowerSum::from_poly(f)),
            Repr::Power { f, .. } => Some(f.clone()),
            _ => None,
        }
    }

    fn raw(&self, u: f64, v: f64) -> f64 {
        match &self.repr {
            Repr::Poly { f, .. } => f.eval(u, v),
            Repr::Power { f, .. } => f.eval(u, v),
            Repr::Closure { f, .. } => f(u, v),
            Repr::Ast(e) => e.eval(u, v),
        }
    }

    pub fn eval(&self, u: f64, v: f64) -> Result<f64> {
        finite(self.raw(u, v), u, v)
    }

    pub fn mixed_partial(&self, u: f64, v: f64) -> Result<f64> {
        let x = match &self.repr {
            Repr::Poly { d, .. } => d.eval(u, v),
            Repr::Power { d, .. } => d.eval(u, v),
            Repr::Closure { d: Some(d), .. } => d(u, v),
            Repr::Closure { f, d: None } => cross_difference(|a, b| f(a, b), u, v),
            Repr::Ast(e) => cross_difference(|a, b| e.eval(a, b), u, v),
        };
        finite(x, u, v)
    }

    /// `|∂²f/∂u∂v|` at a point.
    pub fn mixed_abs(&self, u: f64, v: f64) -> Result<f64> {
        self.mixed_partial(u, v).map(f64::abs)
    }

    /// `α f`, keeping the exact representation where there is one.
    pub fn scaled(&self, alpha: f64) -> Surface {
        let label = format!("{alpha}*({})", self.label);
        match &self.repr {
            Repr::Poly { f, .. } => Surface::polynomial(label, f.scaled(alpha)),
            Repr::Power { f, .. } => Surface::power_sum(label, f.scale(alpha)),
            Repr::Closure { f, d } => {
                let f = Arc::clone(f);
                let repr = match d {
                    Some(d) => {
                        let d = Arc::clone(d);
                        Repr::Closure {
                            f: Arc::new(move |u, v| alpha * f(u, v)),
                            d: Some(Arc::new(move |u, v| alpha * d(u, v))),
                        }
                    }
                    None => Repr::Closure {
                        f: Arc::new(move |u, v| alpha * f(u, v)),
                        d: None,
                    },
                };
                Surface { label, repr }
            }
            Repr::Ast(e) => Surface {
                label,
                repr: Repr::Ast(Expr::Mul(Box::new(Expr::Num(alpha)), Box::new(e.clone()))),
            },
        }
    }
}

/// Parses a DSL expression into a surface. Expressions that expand to a sum
/// of power products get exact mixed partials; anything else falls back to
/// finite differences.
pub fn parse_surface(expr: &str) -> Result<Surface> {
    let ast = dsl::parse(expr)?;
    let label = expr.trim().to_string();
    Ok(match ast.expand() {
        Some(sum) => Surface::power_sum(label, sum),
        None => Surface {
            label,
            repr: Repr::Ast(ast),
        },
    })
}
