//! Text syntax for polynomials and ring elements.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | power)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' digits)?
//! atom   := digits | 'x' | 'X' | ring-atom | '(' expr ')'
//! ```
//!
//! `ring-atom` is `t` over 𝔽_p[t]. Juxtaposition multiplies, so `3x^5`,
//! `2(x+1)` and `t x` are products. Division is only allowed by nonzero
//! constants, so `1/2*x^2-1/2*x` and `x^12+t^5` both parse, while `1/x` does
//! not. The canonical JSON form lists coefficients in ascending degree as
//! strings: `{"coeffs": ["21","1","1","0","0","3","1"]}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::frac::Frac;
use crate::poly::FieldPoly;
use crate::ring::Pid;
use crate::Error;

struct Parser<'a, R: Pid> {
    ring: &'a R,
    src: &'a [u8],
    pos: usize,
}

impl<'a, R: Pid> Parser<'a, R> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, Error> {
        Err(Error::parse(self.pos, msg))
    }

    fn expr(&mut self) -> Result<FieldPoly<R::Elem>, Error> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' {
                acc.add(self.ring, &rhs)
            } else {
                acc.sub(self.ring, &rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldPoly<R::Elem>, Error> {
        let mut acc = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(op @ (b'*' | b'/')) => {
                    self.pos += 1;
                    op
                }
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => {
                    acc = acc.mul(self.ring, &self.power()?);
                    continue;
                }
                _ => break,
            };
            let at = self.pos;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                acc.mul(self.ring, &rhs)
            } else {
                match (rhs.degree(), rhs.leading()) {
                    (Some(0), Some(c)) => acc.scale(self.ring, &c.inv(self.ring)),
                    (None, _) => return Err(Error::parse(at, "division by zero")),
                    _ => return Err(Error::parse(at, "division by a non-constant")),
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldPoly<R::Elem>, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg(self.ring))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldPoly<R::Elem>, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return self.err("expected exponent");
            }
            let e: u32 = digits
                .parse()
                .or_else(|_| self.err("exponent too large"))?;
            if e > 10_000 {
                return self.err("exponent too large");
            }
            return Ok(base.pow(self.ring, e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<FieldPoly<R::Elem>, Error> {
        let ring = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("digits");
                Ok(FieldPoly::constant(ring, Frac::from_elem(ring, ring.from_bigint(&n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "x" || name == "X" {
                    return Ok(FieldPoly::x(ring));
                }
                match ring.atom(name) {
                    Some(a) => Ok(FieldPoly::constant(ring, Frac::from_elem(ring, a))),
                    None => Err(Error::parse(
                        start,
                        format!("unknown symbol `{name}` over {}", ring.tag()),
                    )),
                }
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `x` over the fraction field of `ring`.
pub fn parse_poly<R: Pid>(ring: &R, text: &str) -> Result<FieldPoly<R::Elem>, Error> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses an element of the fraction field (no `x`).
pub fn parse_frac<R: Pid>(ring: &R, text: &str) -> Result<Frac<R::Elem>, Error> {
    let p = parse_poly(ring, text)?;
    match p.degree() {
        None => Ok(Frac::zero(ring)),
        Some(0) => Ok(p.coeffs()[0].clone()),
        Some(_) => Err(Error::parse(0, "expected a constant, found a polynomial in x")),
    }
}

/// Parses an element of the ring itself.
pub fn parse_elem<R: Pid>(ring: &R, text: &str) -> Result<R::Elem, Error> {
    let f = parse_frac(ring, text)?;
    f.to_elem(ring)
        .ok_or_else(|| Error::NotInRing(format!("{} over {}", f.format(ring), ring.tag())))
}

/// Canonical JSON form of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
}

pub fn poly_to_json<R: Pid>(ring: &R, p: &FieldPoly<R::Elem>) -> PolyJson {
    PolyJson {
        coeffs: p.coeffs().iter().map(|c| c.format(ring)).collect(),
    }
}

pub fn poly_from_json<R: Pid>(ring: &R, j: &PolyJson) -> Result<FieldPoly<R::Elem>, Error> {
    let coeffs = j
        .coeffs
        .iter()
        .map(|c| parse_frac(ring, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FieldPoly::from_coeffs(ring, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FpPolyRing, Integers, Localized};
    use proptest::prelude::*;

    #[test]
    fn section_five_example() {
        let r = Integers::default();
        let p = parse_poly(&r, "x^6+3*x^5+x^2+x+21").unwrap();
        let j = poly_to_json(&r, &p);
        assert_eq!(j.coeffs, ["21", "1", "1", "0", "0", "3", "1"]);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"coeffs":["21","1","1","0","0","3","1"]}"#
        );
        assert_eq!(poly_from_json(&r, &j).unwrap(), p);
    }

    #[test]
    fn products_and_rationals() {
        let r = Integers::default();
        let a = parse_poly(&r, "1/2*x^2-1/2*x").unwrap();
        let b = parse_poly(&r, "x*(x-1)/2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.format(&r), "1/2*x^2-1/2*x");
        assert_eq!(parse_poly(&r, "x^6+3x^5+x^2+x+21").unwrap(), parse_poly(&r, "x^6+3*x^5+x^2+x+21").unwrap());
        assert_eq!(parse_poly(&r, "2(x+1)x").unwrap(), parse_poly(&r, "2*x^2+2*x").unwrap());
        let f = FpPolyRing::new(3).unwrap();
        assert_eq!(parse_poly(&f, "2t x").unwrap(), parse_poly(&f, "2*t*x").unwrap());
    }

    #[test]
    fn fpt_coefficients() {
        let r = FpPolyRing::new(3).unwrap();
        let p = parse_poly(&r, "x^12+t^5").unwrap();
        assert_eq!(p.degree(), Some(12));
        assert_eq!(p.coeffs()[0].format(&r), "t^5");
        assert_eq!(p.format(&r), "x^12+t^5");
    }

    #[test]
    fn localized_elements() {
        let r = Localized::new(5).unwrap();
        assert_eq!(r.format_elem(&r.parse_elem("10/3").unwrap()), "10/3");
        assert!(matches!(r.parse_elem("1/5"), Err(Error::NotInRing(_))));
    }

    #[test]
    fn errors_carry_positions() {
        let r = Integers::default();
        assert!(matches!(parse_poly(&r, "x^2+"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly(&r, "1/x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly(&r, "x+t"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly(&r, "(x+1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&r, "x 1"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(r.parse_elem("1/2"), Err(Error::NotInRing(_))));
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-100i64..=100, 1i64..=100), 0..=10)
    }

    proptest! {
        #[test]
        fn parse_print_identity(coeffs in arb_poly()) {
            let r = Integers::default();
            let p = FieldPoly::from_coeffs(&r, coeffs.iter()
                .map(|&(n, d)| Frac::new(&r, BigInt::from(n), BigInt::from(d)))
                .collect());
            let printed = p.format(&r);
            prop_assert_eq!(parse_poly(&r, &printed).unwrap(), p.clone());
            prop_assert_eq!(poly_from_json(&r, &poly_to_json(&r, &p)).unwrap(), p);
        }

        #[test]
        fn parse_print_identity_fpt(coeffs in prop::collection::vec(
            (prop::collection::vec(0u64..5, 0..4), prop::collection::vec(0u64..5, 0..3)), 0..5)) {
            let r = FpPolyRing::new(5).unwrap();
            let p = FieldPoly::from_coeffs(&r, coeffs.iter().map(|(n, d)| {
                let d = r.from_coeffs(d.clone());
                let d = if r.is_zero(&d) { r.one() } else { d };
                Frac::new(&r, r.from_coeffs(n.clone()), d)
            }).collect());
            let printed = p.format(&r);
            prop_assert_eq!(parse_poly(&r, &printed).unwrap(), p);
        }
    }
}
