use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate rectangle [{a}, {b}] x [{c}, {d}]: need a < b and c < d")]
    DegenerateRect { a: f64, b: f64, c: f64, d: f64 },

    #[error("bad exponent: {0}")]
    BadExponent(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point ({x}, {y}) lies outside the rectangle")]
    PointOutsideRect { x: f64, y: f64 },

    #[error("evaluation produced a non-finite value at ({u}, {v})")]
    Eval { u: f64, v: f64 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("quadrature tolerance not met: value {value}, error estimate {err_estimate}")]
    ToleranceNotMet { value: f64, err_estimate: f64 },

    #[error("rectangle must lie in [0, inf)^2 for certification (a = {a}, c = {c})")]
    NegativeDomain { a: f64, c: f64 },

    #[error("unknown catalog surface `{0}`")]
    NotFound(String),
}

/// A DSL syntax error: byte offset into the input plus the tokens that would
/// have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message} (expected one of: {})", expected.join(", "))]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}
