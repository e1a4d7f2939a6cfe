//! Surface expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := number | 'u' | 'v' | factor '^' number | '(' expr ')'
//! ```
//!
//! Exponents must be positive numbers. Whitespace is ignored.

use crate::error::ParseError;

use super::poly::PowerSum;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    U,
    V,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
}

// Integer powers of a multi-term sum are expanded only up to this exponent.
const MAX_EXPAND_POWER: f64 = 16.0;

impl Expr {
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        match self {
            Expr::Num(k) => *k,
            Expr::U => u,
            Expr::V => v,
            Expr::Add(l, r) => l.eval(u, v) + r.eval(u, v),
            Expr::Sub(l, r) => l.eval(u, v) - r.eval(u, v),
            Expr::Mul(l, r) => l.eval(u, v) * r.eval(u, v),
            Expr::Pow(b, e) => {
                let base = b.eval(u, v);
                if e.fract() == 0.0 {
                    base.powi(*e as i32)
                } else {
                    base.powf(*e)
                }
            }
        }
    }

    /// Expands into a sum of power products, or `None` when the expression
    /// has no such form (a non-integer power of a sum, or of a negative
    /// coefficient).
    pub fn expand(&self) -> Option<PowerSum> {
        match self {
            Expr::Num(k) => Some(PowerSum::constant(*k)),
            Expr::U => Some(PowerSum::term(1.0, 1.0, 0.0)),
            Expr::V => Some(PowerSum::term(1.0, 0.0, 1.0)),
            Expr::Add(l, r) => Some(l.expand()?.add(&r.expand()?)),
            Expr::Sub(l, r) => Some(l.expand()?.add(&r.expand()?.scale(-1.0))),
            Expr::Mul(l, r) => Some(l.expand()?.mul(&r.expand()?)),
            Expr::Pow(b, e) => {
                let base = b.expand()?;
                match base.terms.as_slice() {
                    [] => Some(PowerSum::default()),
                    [t] if t.coef > 0.0 || e.fract() == 0.0 => {
                        let coef = if e.fract() == 0.0 {
                            t.coef.powi(*e as i32)
                        } else {
                            t.coef.powf(*e)
                        };
                        Some(PowerSum::term(coef, t.pu * e, t.pv * e))
                    }
                    _ if e.fract() == 0.0 && *e <= MAX_EXPAND_POWER => {
                        let mut acc = PowerSum::constant(1.0);
                        for _ in 0..(*e as u32) {
                            acc = acc.mul(&base);
                        }
                        Some(acc)
                    }
                    _ => None,
                }
            }
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(
            "unexpected trailing input",
            &["'+'", "'-'", "'*'", "'^'", "end of input"],
        ));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const OPERAND: &[&str] = &["number", "'u'", "'v'", "'('"];

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: &str, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
            expected: expected.to_vec(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self
                .number()
                .ok_or_else(|| self.error("expected exponent", &["number"]))?;
            if !(e > 0.0) || !e.is_finite() {
                return Err(ParseError {
                    offset: at,
                    message: format!("exponent {e} must be a positive number"),
                    expected: vec!["positive number"],
                });
            }
            base = Expr::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'u') => {
                self.pos += 1;
                Ok(Expr::U)
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(Expr::V)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(
                        self.error("unclosed parenthesis", &["')'", "'+'", "'-'", "'*'", "'^'"])
                    );
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self
                .number()
                .map(Expr::Num)
                .ok_or_else(|| self.error("malformed number", &["number"])),
            Some(_) => Err(self.error("unexpected character", OPERAND)),
            None => Err(self.error("unexpected end of input", OPERAND)),
        }
    }

    /// Unsigned decimal with optional fraction and exponent.
    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        let s = self.src;
        let mut i = self.pos;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        if i < s.len() && s[i] == b'.' {
            i += 1;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i == start || (i == start + 1 && s[start] == b'.') {
            return None;
        }
        if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
            let mut j = i + 1;
            if j < s.len() && (s[j] == b'+' || s[j] == b'-') {
                j += 1;
            }
            let digits = j;
            while j < s.len() && s[j].is_ascii_digit() {
                j += 1;
            }
            if j > digits {
                i = j;
            }
        }
        let text = std::str::from_utf8(&s[start..i]).ok()?;
        let value = text.parse::<f64>().ok()?;
        self.pos = i;
        Some(value)
    }
}
