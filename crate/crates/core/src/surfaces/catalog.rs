//! Built-in surfaces with known mixed partials.
//!
//! Every member's `|∂²f/∂u∂v|` has non-negative convex sections on
//! `[0, inf)^2`, hence is co-ordinated s-convex for every `s` in `(0, 1]`.

use super::poly::{Poly2, PowerSum};
use super::Surface;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub surface: Surface,
    /// `|∂²f/∂u∂v|` (and its powers `q >= 1`) is co-ordinated s-convex for all s.
    pub mixed_s_convex: bool,
    /// `f` itself is non-negative and co-ordinated s-convex for all s.
    pub f_s_convex: bool,
}

fn entry(name: &str, description: &str, surface: Surface) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        description: description.to_string(),
        surface,
        mixed_s_convex: true,
        f_s_convex: true,
    }
}

const EXPONENTS: [f64; 3] = [2.0, 2.5, 3.0];

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        entry("const", "f = 1", constant(1.0)),
        entry(
            "bilinear",
            "f = uv",
            Surface::polynomial("u*v", Poly2::monomial(1.0, 1, 1).unwrap()),
        ),
        entry(
            "quartic",
            "f = u^2 v^2",
            Surface::polynomial("u^2*v^2", Poly2::monomial(1.0, 2, 2).unwrap()),
        ),
        entry(
            "sextic",
            "f = u^3 v^3",
            Surface::polynomial("u^3*v^3", Poly2::monomial(1.0, 3, 3).unwrap()),
        ),
    ];
    for alpha in EXPONENTS {
        for beta in EXPONENTS {
            out.push(entry(
                &format!("power_{alpha}_{beta}"),
                &format!("f = u^{alpha} v^{beta}"),
                power_product(alpha, beta),
            ));
        }
    }
    out.push(entry(
        "square_sum",
        "f = (u + v)^2",
        Surface::polynomial(
            "(u+v)^2",
            Poly2::new(vec![vec![0.0, 0.0, 1.0], vec![0.0, 2.0], vec![1.0]]).unwrap(),
        ),
    ));
    out
}

pub fn constant(k: f64) -> Surface {
    Surface::constant(k)
}

/// `u^alpha v^beta`.
pub fn power_product(alpha: f64, beta: f64) -> Surface {
    Surface::power_sum(
        format!("u^{alpha}*v^{beta}"),
        PowerSum::term(1.0, alpha, beta),
    )
}

/// `u^s v^s`, whose sections are s-convex in the second sense.
pub fn s_power(s: f64) -> Surface {
    power_product(s, s)
}

/// Looks up a catalog name; also accepts `const(k)`.
pub fn lookup(name: &str) -> Result<Surface> {
    let name = name.trim();
    if let Some(arg) = name
        .strip_prefix("const(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let k: f64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::NotFound(name.to_string()))?;
        return Ok(constant(k));
    }
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.surface)
        .ok_or_else(|| Error::NotFound(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::SurfaceKind;

    #[test]
    fn lookups() {
        let b = lookup("bilinear").unwrap();
        assert_eq!(b.eval(2.0, 3.0).unwrap(), 6.0);
        let q = lookup("quartic").unwrap();
        assert_eq!(q.eval(2.0, 3.0).unwrap(), 36.0);
        assert!(matches!(lookup("missing"), Err(Error::NotFound(_))));
        assert_eq!(lookup("const(2.5)").unwrap().eval(9.0, 9.0).unwrap(), 2.5);
        assert!(lookup("const(x)").is_err());
    }

    #[test]
    fn required_members_present() {
        let names: Vec<String> = catalog().into_iter().map(|e| e.name).collect();
        for n in [
            "const",
            "bilinear",
            "quartic",
            "sextic",
            "square_sum",
            "power_2.5_3",
            "power_2_2",
        ] {
            assert!(names.iter().any(|x| x == n), "missing {n}");
        }
        assert_eq!(names.len(), 4 + 9 + 1);
    }

    #[test]
    fn analytic_mixed_partials() {
        let p = power_product(2.5, 3.0);
        assert_eq!(p.kind(), SurfaceKind::PowerProduct);
        let got = p.mixed_partial(4.0, 2.0).unwrap();
        assert!((got - 2.5 * 3.0 * 4f64.powf(1.5) * 4.0).abs() < 1e-12);
        let sq = lookup("square_sum").unwrap();
        assert_eq!(sq.eval(1.0, 2.0).unwrap(), 9.0);
        assert_eq!(sq.mixed_partial(1.0, 2.0).unwrap(), 2.0);
    }
}
