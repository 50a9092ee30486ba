//! Recursive-descent parser for polynomial and rational expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' int)?`,
//! `atom := int | 'x' int | '(' expr ')'`.

use num_bigint::BigInt;
use num_traits::One;

use super::{HomogPoly, PolyError};

/// A quotient of homogeneous polynomials produced while parsing.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: HomogPoly,
    pub den: HomogPoly,
}

impl Fraction {
    fn poly(p: HomogPoly) -> Self {
        let n = p.nvars();
        Self { num: p, den: HomogPoly::one(n) }
    }

    fn add(&self, o: &Self, negate: bool) -> Result<Self, PolyError> {
        let a = &self.num * &o.den;
        let b = &o.num * &self.den;
        let num = if negate { a.try_sub(&b)? } else { a.try_add(&b)? };
        Ok(Self { num, den: &self.den * &o.den })
    }

    fn mul(&self, o: &Self) -> Self {
        Self { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    fn div(&self, o: &Self) -> Result<Self, PolyError> {
        if o.num.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.into() }
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

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<BigInt>().map_err(|e| self.err(e.to_string()))
    }

    fn expr(&mut self) -> Result<Fraction, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, false)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, true)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Fraction, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let u = self.unary()?;
                    acc = acc.mul(&u);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let u = self.unary()?;
                    acc = acc.div(&u)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Fraction, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let mut u = self.unary()?;
                u.num = -&u.num;
                Ok(u)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Fraction, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Fraction, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self.integer()?;
                let i = usize::try_from(idx).map_err(|_| self.err("bad variable index"))?;
                if i == 0 || i > self.nvars {
                    return Err(self.err(format!("variable x{i} out of range")));
                }
                Ok(Fraction::poly(HomogPoly::var(self.nvars, i - 1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Fraction::poly(HomogPoly::constant(self.nvars, n)))
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an expression that may contain divisions.
pub fn parse_fraction(text: &str, nvars: usize) -> Result<Fraction, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars };
    let f = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    if f.den.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    Ok(f)
}

/// Parses a polynomial; divisions are allowed only when they cancel exactly.
pub fn parse_poly(text: &str, nvars: usize) -> Result<HomogPoly, PolyError> {
    let f = parse_fraction(text, nvars)?;
    if f.den.is_constant() {
        let c = f.den.leading_coeff().cloned().unwrap_or_else(BigInt::one);
        return f.num.div_scalar_exact(&c);
    }
    f.num.divide_exact(&f.den)
}

impl std::str::FromStr for HomogPoly {
    type Err = PolyError;
    /// Parses a polynomial in four variables.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse_poly(s, 4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_expanded_text() {
        let p = parse_poly("x1^2*x2^2 - x3^2*x4^2", 4).unwrap();
        assert_eq!(p.to_string(), "x1^2*x2^2 - x3^2*x4^2");
        let q = parse_poly("-3*x1*x2 + 2*x3^2", 4).unwrap();
        assert_eq!(parse_poly(&q.to_string(), 4).unwrap(), q);
    }

    #[test]
    fn parse_products_and_quotients() {
        let p = parse_poly("(x1+x2)*(x1-x2)", 4).unwrap();
        assert_eq!(p, parse_poly("x1^2 - x2^2", 4).unwrap());
        let q = parse_poly("(x1^2-x2^2)/(x1+x2)", 4).unwrap();
        assert_eq!(q, parse_poly("x1-x2", 4).unwrap());
        assert!(matches!(parse_poly("(x1^2+x2^2)/(x1+x2)", 4), Err(PolyError::NotDivisible)));
        let f = parse_fraction("x4^2 - 36*x3^2/4", 4).unwrap();
        assert_eq!(f.den, HomogPoly::constant(4, 4));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_poly("x1 + x2^2", 4), Err(PolyError::DegreeMismatch(..))));
        assert!(matches!(parse_poly("x5", 4), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly("x1 +", 4), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly("(x1", 4), Err(PolyError::Parse { .. })));
    }
}
