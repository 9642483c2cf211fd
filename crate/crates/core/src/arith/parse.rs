//! Text grammar for polynomials in `t`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*'? unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' integer)?
//! primary := integer ('/' integer)? | 't' | '(' expr ')'
//! ```
//! Whitespace is insignificant. Juxtaposition multiplies, so `t^2(t^10-1)`
//! is accepted.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ArithError, QPoly, Rat};

pub fn parse_poly(src: &str) -> Result<QPoly, ArithError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ArithError {
        ArithError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<QPoly, ArithError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly, ArithError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b't' | b'(' | b'0'..=b'9') => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QPoly, ArithError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QPoly, ArithError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer().ok_or_else(|| self.err("expected exponent"))?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<QPoly, ArithError> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(QPoly::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let num = self.integer().expect("digit present");
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    match self.integer() {
                        Some(den) if !den.is_zero() => {
                            return Ok(QPoly::constant(Rat::new(num, den)));
                        }
                        Some(_) => return Err(self.err("zero denominator")),
                        None => {
                            self.pos = save;
                            return Err(self.err("expected denominator"));
                        }
                    }
                }
                Ok(QPoly::constant(Rat::from_integer(num)))
            }
            Some(_) => Err(self.err("expected a number, 't' or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }
}
