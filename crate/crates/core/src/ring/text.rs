//! Plain-text polynomial grammar.
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := int ["/" int] | name ["^" int]
//! ```
//! The canonical printed form lists terms in descending lex order, omits unit
//! coefficients and prints prime-field residues above `p/2` as negatives.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::field::Scalar;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::RingRef;
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn name(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected variable"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }
}

impl Polynomial {
    pub fn parse(ring: &RingRef, s: &str) -> Result<Polynomial> {
        let mut lx = Lexer {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut terms = Vec::new();
        let mut sign = match lx.peek() {
            Some(b'-') => {
                lx.bump();
                -1
            }
            Some(b'+') => {
                lx.bump();
                1
            }
            None => return Err(Error::Parse("empty polynomial".into())),
            _ => 1,
        };
        loop {
            let (m, c) = parse_term(ring, &mut lx)?;
            terms.push((m, if sign < 0 { -c } else { c }));
            match lx.bump() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => {
                    lx.pos -= 1;
                    return Err(lx.error("unexpected character"));
                }
            }
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}

fn parse_term(ring: &RingRef, lx: &mut Lexer<'_>) -> Result<(Monomial, Scalar)> {
    let mut exps = vec![0u16; ring.nvars()];
    let mut coeff = Scalar::one();
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = lx.integer()?;
                let den = if lx.peek() == Some(b'/') {
                    lx.bump();
                    lx.integer()?
                } else {
                    BigInt::one()
                };
                if den == BigInt::from(0) {
                    return Err(Error::DivisionByZero);
                }
                coeff *= Scalar::new(num, den);
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = lx.name()?;
                let v = ring.var_index(name)?;
                let e = if lx.peek() == Some(b'^') {
                    lx.bump();
                    let e = lx.integer()?;
                    u16::try_from(e).map_err(|_| lx.error("exponent too large"))?
                } else {
                    1
                };
                exps[v] += e;
            }
            _ => return Err(lx.error("expected coefficient or variable")),
        }
        if lx.peek() == Some(b'*') {
            lx.bump();
        } else {
            break;
        }
    }
    Ok((Monomial::from_exponents(exps), coeff))
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &RingRef, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for v in m.support() {
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.name(v))?;
        let e = m.exponent(v);
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ring = self.ring();
        let field = ring.field();
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let c = field.display_value(c);
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, ring, m)?;
            }
        }
        Ok(())
    }
}
