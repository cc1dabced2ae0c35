//! Text form of exact numbers: `7`, `-1/27`, `sqrt(8)`, `4+2*sqrt(2)`,
//! `2-2/5*sqrt(5)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactNumber;
use crate::{Error, Result};

pub(super) fn render(x: &ExactNumber) -> String {
    let a = x.rational_part();
    let b = x.irrational_part();
    let Some(d) = x.radicand() else {
        return a.to_string();
    };
    let mut out = String::new();
    if !a.is_zero() {
        out.push_str(&a.to_string());
        out.push(if b.is_negative() { '-' } else { '+' });
    } else if b.is_negative() {
        out.push('-');
    }
    let mag = b.abs();
    if !mag.is_one() {
        out.push_str(&mag.to_string());
        out.push('*');
    }
    out.push_str(&format!("sqrt({d})"));
    out
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as an integer"))
    }

    fn at_sqrt(&mut self) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(b"sqrt")
    }

    fn radical(&mut self) -> Result<u64> {
        self.skip_ws();
        self.pos += 4;
        if !self.eat(b'(') {
            return self.err("expected `(` after sqrt");
        }
        let start = self.pos;
        let n = self.digits()?;
        if n.is_zero() {
            self.pos = start;
            return self.err("radicand must be positive");
        }
        let Some(n) = n.to_u64() else {
            self.pos = start;
            return self.err("radicand too large");
        };
        if !self.eat(b')') {
            return self.err("expected `)`");
        }
        Ok(n)
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// `[sign] (rat [[*] sqrt(n)] | sqrt(n))`, returning the coefficient and
    /// the radicand if a radical was present.
    fn term(&mut self, sign_required: bool) -> Result<(BigRational, Option<u64>)> {
        self.skip_ws();
        let neg = if self.eat(b'-') {
            true
        } else if self.eat(b'+') {
            false
        } else if sign_required {
            return self.err("expected `+` or `-`");
        } else {
            false
        };
        let sgn = |v: BigRational| if neg { -v } else { v };
        if self.at_sqrt() {
            let d = self.radical()?;
            return Ok((sgn(BigRational::one()), Some(d)));
        }
        let r = self.rational()?;
        let starred = self.eat(b'*');
        if self.at_sqrt() {
            let d = self.radical()?;
            return Ok((sgn(r), Some(d)));
        }
        if starred {
            return self.err("expected sqrt after `*`");
        }
        Ok((sgn(r), None))
    }
}

/// Parse an exact literal. Radicands are normalized (`sqrt(8)` becomes
/// `2*sqrt(2)`), never rejected.
pub fn parse_exact_literal(s: &str) -> Result<ExactNumber> {
    let mut c = Cursor {
        s: s.as_bytes(),
        pos: 0,
    };
    c.skip_ws();
    if c.peek().is_none() {
        return c.err("empty literal");
    }
    let mut rational = BigRational::zero();
    let mut radical: Option<(BigRational, u64)> = None;
    let mut seen_rational = false;
    for i in 0..2 {
        c.skip_ws();
        if c.peek().is_none() {
            break;
        }
        let start = c.pos;
        let (coef, d) = c.term(i > 0)?;
        match d {
            Some(d) => {
                if radical.is_some() {
                    c.pos = start;
                    return c.err("at most one radical term");
                }
                radical = Some((coef, d));
            }
            None => {
                if seen_rational {
                    c.pos = start;
                    return c.err("at most one rational term");
                }
                seen_rational = true;
                rational = coef;
            }
        }
    }
    c.skip_ws();
    if c.peek().is_some() {
        return c.err("unexpected trailing input");
    }
    match radical {
        None => Ok(ExactNumber::from_rational(rational)),
        Some((b, d)) => ExactNumber::new(rational, b, d),
    }
}
