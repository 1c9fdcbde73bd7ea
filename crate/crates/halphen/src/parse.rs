//! Text syntax for polynomials and scalars.
//!
//! ```text
//! expr   := ["-"|"+"] term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := atom ["^" digits]
//! atom   := integer | "x" | "sqrt(" ["-"] integer ")" | "(" expr ")" | "-" factor
//! ```
//!
//! Division is only by nonzero constants. `sqrt(d)` is accepted so that printed values in
//! a quadratic field read back unchanged.

use std::fmt;

use num_bigint::BigInt;

use crate::exactalg::{Poly, Scalar};

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allow_x: bool,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(ParseError { pos: at, msg: "division by a zero or non-constant divisor".into() });
                }
                acc = acc.scale(&d.coeff(0).inv());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        if matches!(self.peek(), Some(b'-') | Some(b'(')) {
            return self.err("exponent must be a non-negative integer literal");
        }
        let at = self.pos;
        let e: u32 = match self.digits()?.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(ParseError { pos: at, msg: format!("exponent overflow (limit {MAX_EXPONENT})") }),
        };
        if self.peek() == Some(b'^') {
            return self.err("chained exponents need parentheses");
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'x') if self.allow_x => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().expect("digits");
                Ok(Poly::constant(Scalar::from(n)))
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                self.expect(b'(')?;
                let neg = self.eat(b'-');
                let at = self.pos;
                let d: i64 = match self.digits()?.parse::<i64>() {
                    Ok(d) if d < i64::MAX / 4 => d,
                    _ => return Err(ParseError { pos: at, msg: "radicand too large".into() }),
                };
                self.expect(b')')?;
                Ok(Poly::constant(Scalar::sqrt_int(if neg { -d } else { d })))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn run(text: &str, allow_x: bool) -> Result<Poly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, allow_x };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    run(text, true)
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    Ok(run(text, false)?.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = parse_poly("4*x^3 - 5/2*x + 1").unwrap();
        assert_eq!(p.coeffs(), &[Scalar::one(), Scalar::frac(-5, 2), Scalar::zero(), Scalar::from(4)]);
        assert_eq!(parse_poly("x*(x-1)*(x-81)").unwrap(), Poly::from_ints(&[0, 81, -82, 1]));
        let e = parse_poly("x^(-1)").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_poly("x^-1").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_poly("x + * 2").unwrap_err().pos, 4);
        assert_eq!(parse_poly("(x+1").unwrap_err().pos, 4);
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("1/x").is_err());
        assert!(parse_poly("x^99999999999").unwrap_err().msg.contains("overflow"));
        assert!(parse_poly("x 2").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn scalars_and_radicals() {
        assert_eq!(parse_scalar("-13/108").unwrap(), Scalar::frac(-13, 108));
        assert_eq!(parse_scalar("sqrt(-1)").unwrap(), Scalar::sqrt_int(-1));
        let v = Scalar::quadratic(crate::exactalg::rat(1, 2), crate::exactalg::rat(-3, 4), 5);
        assert_eq!(parse_scalar(&v.to_string()).unwrap(), v);
        assert_eq!(parse_scalar(" - - 2 ").unwrap(), Scalar::from(2));
    }

    #[test]
    fn printer_round_trip() {
        let v = Scalar::quadratic(crate::exactalg::rat(1, 2), crate::exactalg::rat(-3, 4), 5);
        let p = Poly::new(vec![v.clone(), Scalar::frac(-7, 3), Scalar::zero(), v]);
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}
