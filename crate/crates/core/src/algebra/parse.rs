//! Reading polynomials in the canonical text form (and the looser forms a
//! person would type: minus signs, parentheses, integer coefficients).

use std::sync::Arc;

use super::monomial::MAX_EXPONENT;
use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Non-monomial bases are only raised to bounded powers so a single line of
/// input cannot request an astronomically large expansion.
const MAX_DENSE_POWER: u64 = 4096;

/// Parse `text` as a polynomial of `ring`. `line` and `column` locate the
/// start of `text` in the enclosing document for error reporting.
pub fn parse_polynomial_at(ring: &Arc<PolyRing>, text: &str, line: usize, column: usize) -> Result<Polynomial> {
    let mut p = PolyParser {
        ring,
        chars: text.char_indices().collect(),
        pos: 0,
        line,
        column,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("expected a polynomial"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected `{}`", p.peek().unwrap())));
    }
    Ok(f)
}

pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, text, 1, 1)
}

struct PolyParser<'a> {
    ring: &'a Arc<PolyRing>,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    column: usize,
}

impl PolyParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column + self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an exponent"));
        }
        let e = digits
            .parse::<u64>()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| {
                self.pos = start;
                self.error("exponent too large")
            })?;
        if base.len() > 1 && e > MAX_DENSE_POWER {
            self.pos = start;
            return Err(self.error("exponent too large for a non-monomial base"));
        }
        if base.is_monomial() {
            let (m, c) = &base.terms()[0];
            let m = m.scale_exponents(e).map_err(|_| {
                self.pos = start;
                self.error("exponent too large")
            })?;
            let c = self.ring.field().pow(*c, e);
            return Ok(self.ring.monomial(m, c));
        }
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn base(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let f = self.ring.field();
                let p = f.characteristic() as u64;
                let v = digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(self.ring.constant(v as u32))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                match self.ring.index_of(&name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => {
                        self.pos = start;
                        Err(Error::UnknownIdentifier(name))
                    }
                }
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
