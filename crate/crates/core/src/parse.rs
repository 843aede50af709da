//! Polynomials in `X` and `Y` from text: integers, `+ - * ^`, parentheses.

use num_bigint::BigInt;

use crate::algebra::bpoly::BPoly;
use crate::algebra::field::Field;
use crate::{Error, Result};

struct Parser<'a, K: Field> {
    k: &'a K,
    s: &'a [u8],
    pos: usize,
}

impl<K: Field> Parser<'_, K> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<BPoly<K>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(self.k, &t) } else { acc.sub(self.k, &t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BPoly<K>> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.unary()?;
            acc = acc.mul(self.k, &f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BPoly<K>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let u = self.unary()?;
                Ok(BPoly::zero().sub(self.k, &u))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BPoly<K>> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.err("expected a non-negative integer exponent");
        }
        match digits.parse::<u32>() {
            Ok(e) if e <= 1 << 16 => Ok(base.pow(self.k, e)),
            _ => Err(Error::Syntax { offset: start, msg: "exponent too large".into() }),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<BPoly<K>> {
        let k = self.k;
        match self.peek() {
            Some(b'0'..=b'9') => {
                let n: BigInt = self.digits().parse().expect("digits");
                Ok(BPoly::from_terms(k, &[(k.from_bigint(&n), 0, 0)]))
            }
            Some(b'X') => {
                self.pos += 1;
                Ok(BPoly::from_terms(k, &[(k.one(), 0, 1)]))
            }
            Some(b'Y') => {
                self.pos += 1;
                Ok(BPoly::from_terms(k, &[(k.one(), 1, 0)]))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a polynomial over `k`, reducing integers into the field.
pub fn parse_poly<K: Field>(k: &K, text: &str) -> Result<BPoly<K>> {
    let mut p = Parser { k, s: text.as_bytes(), pos: 0 };
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fp, Rationals, Ring};

    #[test]
    fn simple() {
        let k = Rationals;
        let f = parse_poly(&k, "Y^2 - X").unwrap();
        assert_eq!(f, BPoly::from_terms(&k, &[(k.one(), 2, 0), (k.from_i64(-1), 0, 1)]));
        let g = parse_poly(&k, " (Y - X) * (Y + X) ").unwrap();
        assert_eq!(g, parse_poly(&k, "Y^2-X^2").unwrap());
        assert_eq!(parse_poly(&k, "-(-Y)^3").unwrap(), parse_poly(&k, "Y^3").unwrap());
    }

    #[test]
    fn reduces_mod_p() {
        let k = Fp::new(7).unwrap();
        assert_eq!(parse_poly(&k, "8*Y + 100000000000000000000000").unwrap(), parse_poly(&k, "Y + 5").unwrap());
    }

    #[test]
    fn long_input() {
        let k = Fp::new(29).unwrap();
        let f = parse_poly(&k, "Y^6+Y^5*X+5*Y^4*X^3-2*Y^4*X+4*Y^2*X^2+X^5-3*X^4").unwrap();
        assert_eq!(f.deg_y(), 6);
        assert_eq!(f.deg_x(), 5);
        assert_eq!(f.support(&k).len(), 7);
    }

    #[test]
    fn syntax_errors() {
        let k = Rationals;
        assert!(matches!(parse_poly(&k, "Y^^2"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly(&k, "Y + "), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(parse_poly(&k, "(Y"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly(&k, "Z"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_poly(&k, "Y X"), Err(Error::Syntax { offset: 2, .. })));
    }
}
