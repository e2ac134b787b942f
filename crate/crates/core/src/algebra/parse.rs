//! Text grammar for polynomials and rational functions:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := power (('*' | '/') power)*
//! power  := atom ('^' integer)?
//! atom   := integer | 'w' | variable | '(' expr ')' | '-' atom
//! ```
//!
//! Integers are reduced mod 2, `-` is the same as `+`, and `w` is the field
//! generator (a primitive cube root of unity in GF(4)).

use std::fmt;

use thiserror::Error;

use super::{AlgebraError, FiniteField, Poly, RatFunc, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.column, self.message)
    }
}

pub fn parse_ratfunc(src: &str, field: FiniteField) -> Result<RatFunc, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, field };
    p.skip_ws();
    let r = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(r)
}

pub fn parse_poly(src: &str, field: FiniteField) -> Result<Poly, ParseError> {
    let r = parse_ratfunc(src, field)?;
    r.as_poly().ok_or_else(|| ParseError { line: 1, column: 1, message: "expected a polynomial".into() })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: FiniteField,
}

impl Parser<'_> {
    fn error(&self, message: String) -> ParseError {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
        let column = self.pos - before.iter().rposition(|&c| c == b'\n').map_or(0, |i| i + 1) + 1;
        ParseError { line, column, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some(b'+' | b'-')) {
            self.pos += 1;
            acc = &acc + &self.term()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    acc = acc.try_div(&d).map_err(|_| {
                        self.pos = at;
                        self.error("division by zero".into())
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = i64::try_from(e).map_err(|_| self.error("exponent too large".into()))?;
            return base.pow(e).map_err(|_| self.error("zero to a negative power".into()));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range".into())
        })
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input".into())),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                self.atom()
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(self.field.element((n % 2) as u32)))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_lowercase()
                        || self.src[self.pos].is_ascii_digit()
                        || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "w" {
                    if self.field.degree() == 1 {
                        self.pos = start;
                        return Err(self.error("`w` is not available over GF(2)".into()));
                    }
                    return Ok(RatFunc::constant(self.field.generator()));
                }
                match Var::new(name) {
                    Ok(v) => Ok(RatFunc::var(self.field, v)),
                    Err(AlgebraError::InvalidVariable(_)) | Err(_) => {
                        self.pos = start;
                        Err(self.error(format!("invalid variable name `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let f = FiniteField::GF4;
        let r = parse_ratfunc("(t^24)/((t+1)^10*(t^2+t+1)^2)", f).unwrap();
        assert_eq!(r.num(), &parse_poly("t^24", f).unwrap());
        assert_eq!(parse_poly("t - 1", f).unwrap(), parse_poly("t + 1", f).unwrap());
        assert_eq!(parse_poly("-x", f).unwrap(), parse_poly("x", f).unwrap());
        assert_eq!(parse_poly("w^3", f).unwrap(), Poly::one(f));
    }

    #[test]
    fn error_positions() {
        let f = FiniteField::GF2;
        let e = parse_poly("t +\n  x*)", f).unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(parse_poly("w + 1", f).is_err());
        assert!(parse_poly("t^", f).is_err());
        assert!(parse_poly("1/t", f).is_err());
        assert!(parse_ratfunc("1/(t+t)", f).is_err());
    }
}
