//! Recursive-descent reader for scalar expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" ["-"] int)?
//! atom   := int | "q" | "v" | "(" expr ")"
//! ```

use num_bigint::BigInt;

use super::QScalar;
use crate::error::{Error, Result};

struct Reader<'a> {
    s: &'a [u8],
    pos: usize,
}

pub(crate) fn parse_scalar(s: &str) -> Result<QScalar> {
    let mut r = Reader { s: s.as_bytes(), pos: 0 };
    let x = r.expr()?;
    r.skip_ws();
    if r.pos != r.s.len() {
        return Err(Error::Parse(format!("trailing input at byte {} in {s:?}", r.pos)));
    }
    Ok(x)
}

impl<'a> Reader<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{}' at byte {}", c as char, self.pos)))
        }
    }

    fn expr(&mut self) -> Result<QScalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QScalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QScalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.int()?;
            let e: i64 = e
                .try_into()
                .map_err(|_| Error::Parse("exponent out of range".into()))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<QScalar> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.factor()
    }

    fn atom(&mut self) -> Result<QScalar> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(QScalar::q())
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(QScalar::v())
            }
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(b')')?;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => Ok(QScalar::from_bigint(self.int()?)),
            other => Err(Error::Parse(format!(
                "unexpected {:?} at byte {}",
                other.map(|c| c as char),
                self.pos
            ))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at byte {start}")));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse().map_err(|_| Error::Parse(format!("bad integer {txt:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_forms() {
        let x: QScalar = "(q^2 - 1)/(q)".parse().unwrap();
        assert_eq!(x, QScalar::q() - QScalar::q_pow(-1));
        let y: QScalar = "v*v".parse().unwrap();
        assert_eq!(y, QScalar::q());
        let z: QScalar = "-3*q^-2 + 2".parse().unwrap();
        assert_eq!(z, QScalar::laurent_q(&[(-2, -3), (0, 2)]));
    }

    #[test]
    fn minus_binds_looser_than_power() {
        let x: QScalar = "-q^-2".parse().unwrap();
        assert_eq!(x, -QScalar::q_pow(-2));
        let y: QScalar = "(-q)^3".parse().unwrap();
        assert_eq!(y, -QScalar::q_pow(3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("q +").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/(q-q)").is_err());
    }
}
