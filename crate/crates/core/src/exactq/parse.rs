//! Parser for the human-readable fraction syntax, e.g. `q^-1/(q+q^-1)`,
//! `3/2*q^{1/2}` or `(1-q^-2)^2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::fraction::QFraction;
use super::ExactError;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn err(msg: impl Into<String>) -> ExactError {
    ExactError::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExactError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(format!("expected '{}' at offset {}", c as char, self.pos)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ExactError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected a number at offset {start}")));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse::<BigInt>().map_err(|e| err(e.to_string()))
    }

    fn expr(&mut self) -> Result<QFraction, ExactError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QFraction, ExactError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.factor()?;
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = acc.checked_div(&d)?;
            } else if matches!(self.peek(), Some(b'q') | Some(b'(')) {
                acc = acc * self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    /// Exponent after `^`: `-2`, `{-3/2}` or `(1/2)`.
    fn exponent(&mut self) -> Result<BigRational, ExactError> {
        let close = if self.eat(b'{') {
            Some(b'}')
        } else if self.eat(b'(') {
            Some(b')')
        } else {
            None
        };
        let neg = self.eat(b'-');
        let mut r = BigRational::from_integer(self.integer()?);
        if close.is_some() && self.eat(b'/') {
            let d = self.integer()?;
            if d.is_zero() {
                return Err(err("zero exponent denominator"));
            }
            r /= BigRational::from_integer(d);
        }
        if let Some(c) = close {
            self.expect(c)?;
        }
        Ok(if neg { -r } else { r })
    }

    fn factor(&mut self) -> Result<QFraction, ExactError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                let e = if self.eat(b'^') { self.exponent()? } else { BigRational::one() };
                QFraction::qpow(&e)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                if self.eat(b'^') {
                    let e = self.exponent()?;
                    if !e.is_integer() {
                        return Err(err("fractional power of a compound expression"));
                    }
                    let k = e.to_integer().to_i32().ok_or(ExactError::Overflow)?;
                    inner.pow(k)
                } else {
                    Ok(inner)
                }
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(QFraction::from_rational(BigRational::from_integer(self.integer()?)))
            }
            Some(c) => Err(err(format!("unexpected '{}' at offset {}", c as char, self.pos))),
            None => Err(err("unexpected end of input")),
        }
    }
}

pub(crate) fn parse(s: &str) -> Result<QFraction, ExactError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_forms() {
        assert_eq!(parse("q+q^-1").unwrap(), QFraction::qnum(2));
        assert_eq!(parse("q^(1/2)").unwrap(), QFraction::qhalf(1));
        assert_eq!(parse("2q").unwrap(), QFraction::from_int(2) * QFraction::qhalf(2));
        assert_eq!(parse("(q-q^-1)^-1*(q^2-q^-2)").unwrap(), QFraction::qnum(2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("q^").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("(q+1)^{1/2}").is_err());
    }
}
