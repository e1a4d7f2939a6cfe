//! Run configuration: one flat `key = value` grammar shared by the command
//! line and config files.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use hadamard_core::bounds::TheoremId;
use hadamard_core::quad::T3Constant;
use hadamard_core::{make_rect, EvalPoint, NormalizationMode, Rect};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json|csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// `--t3-constant` accepts either constant or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum T3Choice {
    Verbatim,
    Sharpened,
    #[default]
    Both,
}

impl T3Choice {
    pub fn constants(self) -> Vec<T3Constant> {
        match self {
            T3Choice::Verbatim => vec![T3Constant::Verbatim],
            T3Choice::Sharpened => vec![T3Constant::Sharpened],
            T3Choice::Both => T3Constant::BOTH.to_vec(),
        }
    }
}

impl FromStr for T3Choice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "verbatim" => Ok(T3Choice::Verbatim),
            "sharpened" => Ok(T3Choice::Sharpened),
            "both" => Ok(T3Choice::Both),
            other => Err(format!(
                "unknown T3 constant `{other}` (expected verbatim|sharpened|both)"
            )),
        }
    }
}

impl fmt::Display for T3Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            T3Choice::Verbatim => "verbatim",
            T3Choice::Sharpened => "sharpened",
            T3Choice::Both => "both",
        })
    }
}

/// Every key accepted in a config file, in canonical order. Each one is
/// also a `--key` flag.
pub const KEYS: [&str; 17] = [
    "fn",
    "catalog",
    "rect",
    "point",
    "s",
    "q",
    "theorem",
    "mode",
    "t3-constant",
    "grid",
    "seed",
    "sweep",
    "certify",
    "tol",
    "include-verbatim-identity",
    "out",
    "format",
];

/// Parameters shared by all commands; unset fields take per-command defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(rename = "fn")]
    pub fn_expr: Option<String>,
    pub catalog: Option<String>,
    pub rect: Option<[f64; 4]>,
    pub point: Option<[f64; 2]>,
    pub s: Option<f64>,
    pub q: Option<f64>,
    pub theorem: Option<TheoremId>,
    pub mode: Option<NormalizationMode>,
    pub t3_constant: Option<T3Choice>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
    pub sweep: Option<Vec<f64>>,
    pub certify: bool,
    pub tol: Option<f64>,
    pub include_verbatim_identity: bool,
    pub out: Option<String>,
    pub format: Option<Format>,
}

fn parse_f64(key: &str, v: &str) -> Result<f64, ConfigError> {
    match v.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => err(format!("{key}: `{v}` is not a finite number")),
    }
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>, ConfigError> {
    v.split(',').map(|p| parse_f64(key, p)).collect()
}

fn parse_array<const N: usize>(key: &str, v: &str) -> Result<[f64; N], ConfigError> {
    let xs = parse_list(key, v)?;
    xs.try_into().map_err(|xs: Vec<f64>| {
        ConfigError(format!(
            "{key}: expected {N} comma-separated numbers, got {}",
            xs.len()
        ))
    })
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        other => err(format!("{key}: `{other}` is not true|false")),
    }
}

fn parse_with<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    v.parse::<T>()
        .map_err(|e| ConfigError(format!("{key}: {e}")))
}

fn join(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl RunConfig {
    /// Builds a config from `key = value` pairs; later pairs win.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<RunConfig, ConfigError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for (k, v) in pairs {
            if !KEYS.contains(&k) {
                return err(format!("unknown key `{k}`"));
            }
            map.insert(k, v);
        }
        let mut c = RunConfig::default();
        for (k, raw) in map {
            let v = raw.trim();
            match k {
                "fn" => c.fn_expr = Some(v.to_string()),
                "catalog" => c.catalog = Some(v.to_string()),
                "rect" => {
                    let [a, b, cc, d] = parse_array::<4>(k, v)?;
                    make_rect(a, b, cc, d).map_err(|e| ConfigError(format!("rect: {e}")))?;
                    c.rect = Some([a, b, cc, d]);
                }
                "point" => c.point = Some(parse_array::<2>(k, v)?),
                "s" => c.s = Some(parse_f64(k, v)?),
                "q" => c.q = Some(parse_f64(k, v)?),
                "theorem" => c.theorem = Some(parse_with(k, v)?),
                "mode" => c.mode = Some(parse_with(k, v)?),
                "t3-constant" => c.t3_constant = Some(parse_with(k, v)?),
                "grid" => c.grid = Some(parse_with(k, v)?),
                "seed" => c.seed = Some(parse_with(k, v)?),
                "sweep" => c.sweep = Some(parse_list(k, v)?),
                "certify" => c.certify = parse_bool(k, v)?,
                "tol" => {
                    let t = parse_f64(k, v)?;
                    if t < 0.0 {
                        return err("tol must be non-negative");
                    }
                    c.tol = Some(t);
                }
                "include-verbatim-identity" => c.include_verbatim_identity = parse_bool(k, v)?,
                "out" => c.out = Some(v.to_string()),
                "format" => c.format = Some(parse_with(k, v)?),
                _ => unreachable!(),
            }
        }
        if c.fn_expr.is_some() && c.catalog.is_some() {
            return err("give either fn or catalog, not both");
        }
        Ok(c)
    }

    /// Splits config-file text into pairs. Blank lines and `#` comments are
    /// skipped; repeated keys are an error.
    pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
        let mut out: Vec<(String, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return err(format!("line {}: expected key = value", i + 1));
            };
            let k = k.trim().to_string();
            if out.iter().any(|(x, _)| *x == k) {
                return err(format!("line {}: duplicate key `{k}`", i + 1));
            }
            out.push((k, v.trim().to_string()));
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<RunConfig, ConfigError> {
        let pairs = Self::parse_pairs(text)?;
        Self::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }

    /// Set fields as pairs in canonical key order.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut put = |k: &'static str, v: Option<String>| {
            if let Some(v) = v {
                out.push((k, v));
            }
        };
        put("fn", self.fn_expr.clone());
        put("catalog", self.catalog.clone());
        put("rect", self.rect.map(|r| join(&r)));
        put("point", self.point.map(|p| join(&p)));
        put("s", self.s.map(|x| x.to_string()));
        put("q", self.q.map(|x| x.to_string()));
        put("theorem", self.theorem.map(|t| t.to_string()));
        put("mode", self.mode.map(|m| m.to_string()));
        put("t3-constant", self.t3_constant.map(|t| t.to_string()));
        put("grid", self.grid.map(|g| g.to_string()));
        put("seed", self.seed.map(|s| s.to_string()));
        put("sweep", self.sweep.as_deref().map(join));
        put("certify", self.certify.then(|| "true".to_string()));
        put("tol", self.tol.map(|x| x.to_string()));
        put(
            "include-verbatim-identity",
            self.include_verbatim_identity.then(|| "true".to_string()),
        );
        put("out", self.out.clone());
        put("format", self.format.map(|f| f.to_string()));
        out
    }

    pub fn to_text(&self) -> String {
        self.to_pairs()
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    pub fn rect(&self) -> Result<Rect, ConfigError> {
        match self.rect {
            Some([a, b, c, d]) => {
                make_rect(a, b, c, d).map_err(|e| ConfigError(format!("rect: {e}")))
            }
            None => err("missing --rect"),
        }
    }

    /// The given point after checking it lies in `rect`.
    pub fn point(&self, rect: &Rect) -> Result<Option<EvalPoint>, ConfigError> {
        match self.point {
            Some([x, y]) => {
                let pt = EvalPoint::new(x, y);
                rect.check_point(pt)
                    .map_err(|e| ConfigError(format!("point: {e}")))?;
                Ok(Some(pt))
            }
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_every_key() {
        let text = "\
# comment
fn = u*v + 3
rect = 0,2,0,1
point = 0.5,0.25
s = 0.5
q = 3
theorem = c2_3
mode = verbatim
t3-constant = sharpened
grid = 12
seed = 7
sweep = 0.25,1
certify = true
tol = 1e-9
include-verbatim-identity = false
out = /tmp/x.json
format = csv
";
        let c = RunConfig::from_text(text).unwrap();
        assert_eq!(c.fn_expr.as_deref(), Some("u*v + 3"));
        assert_eq!(c.rect, Some([0.0, 2.0, 0.0, 1.0]));
        assert_eq!(c.theorem, Some(TheoremId::C2_3));
        assert_eq!(c.mode, Some(NormalizationMode::Verbatim));
        assert_eq!(c.sweep, Some(vec![0.25, 1.0]));
        assert!(c.certify && !c.include_verbatim_identity);
        assert_eq!(c.format, Some(Format::Csv));
        assert_eq!(RunConfig::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "rect = 0,0,0,1",
            "rect = 0,1,0",
            "s = abc",
            "theorem = t9",
            "nope = 1",
            "fn = u\ncatalog = bilinear",
            "s = 1\ns = 2",
            "just text",
            "tol = -1",
            "certify = yes",
            "format = xml",
        ] {
            assert!(RunConfig::from_text(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn later_pairs_override() {
        let c = RunConfig::from_pairs([("s", "0.5"), ("s", "0.75")]).unwrap();
        assert_eq!(c.s, Some(0.75));
    }

    #[test]
    fn point_must_lie_in_rect() {
        let c = RunConfig::from_pairs([("rect", "0,1,0,1"), ("point", "2,0")]).unwrap();
        assert!(c.point(&c.rect().unwrap()).is_err());
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![
            -1e6..1e6f64,
            any::<f64>().prop_filter("finite", |x| x.is_finite())
        ]
    }

    prop_compose! {
        fn configs()(
            fn_expr in proptest::option::of("[uv0-9*+ ^().]{1,12}"),
            rect in proptest::option::of((finite(), 0.001..1e3f64, finite(), 0.001..1e3f64)),
            point in proptest::option::of((finite(), finite())),
            s in proptest::option::of(0.0..=1.0f64),
            q in proptest::option::of(finite()),
            theorem in proptest::option::of(proptest::sample::select(TheoremId::ALL.to_vec())),
            verbatim in proptest::option::of(any::<bool>()),
            t3 in proptest::option::of(proptest::sample::select(vec![T3Choice::Verbatim, T3Choice::Sharpened, T3Choice::Both])),
            grid in proptest::option::of(0usize..1000),
            seed in proptest::option::of(any::<u64>()),
            sweep in proptest::option::of(proptest::collection::vec(finite(), 1..5)),
            certify in any::<bool>(),
            tol in proptest::option::of(0.0..1.0f64),
            ivi in any::<bool>(),
            csv in proptest::option::of(any::<bool>()),
        ) -> RunConfig {
            RunConfig {
                fn_expr: fn_expr.map(|s| s.trim().to_string()).filter(|s| !s.is_empty()),
                catalog: None,
                rect: rect.map(|(a, w, c, h)| [a, a + w, c, c + h]).filter(|r| r[0] < r[1] && r[2] < r[3]),
                point: point.map(|(x, y)| [x, y]),
                s,
                q,
                theorem,
                mode: verbatim.map(|v| if v { NormalizationMode::Verbatim } else { NormalizationMode::Corrected }),
                t3_constant: t3,
                grid,
                seed,
                sweep,
                certify,
                tol,
                include_verbatim_identity: ivi,
                out: None,
                format: csv.map(|c| if c { Format::Csv } else { Format::Json }),
            }
        }
    }

    proptest! {
        #[test]
        fn text_round_trip(c in configs()) {
            let text = c.to_text();
            prop_assert_eq!(RunConfig::from_text(&text).unwrap(), c);
        }
    }
}
