//! Dense univariate polynomials over the fraction field 𝒦 of a PID.
//!
//! Every operation takes the ring handle explicitly, mirroring the ring
//! layer. Coefficients are stored in ascending degree with no trailing zeros.

use crate::frac::{wrap, Frac};
use crate::ring::Pid;
use crate::Error;

mod binomial;
mod factor_q;
mod repr;
mod values;

pub use binomial::{binomial_poly, from_binomial, to_binomial, BinomialForm};
pub use factor_q::{factor_over_q, FactorConfig, PrimitiveFactorization};
pub use repr::{bezout_constant, repr_decompose, BezoutCertificate, ReprDecomposition};
pub use values::{gcd_values, is_integrally_valued, RESIDUE_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldPoly<E> {
    coeffs: Vec<Frac<E>>,
}

/// Result of evaluating a polynomial at a ring element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation<E> {
    pub value: Frac<E>,
    pub in_ring: bool,
}

impl<E: Clone + PartialEq> FieldPoly<E> {
    pub fn zero() -> Self {
        FieldPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<R: Pid<Elem = E>>(ring: &R, coeffs: Vec<Frac<E>>) -> Self {
        let mut p = FieldPoly { coeffs };
        p.trim(ring);
        p
    }

    pub fn from_ring_coeffs<R: Pid<Elem = E>>(ring: &R, coeffs: Vec<E>) -> Self {
        Self::from_coeffs(ring, coeffs.into_iter().map(|c| Frac::from_elem(ring, c)).collect())
    }

    pub fn constant<R: Pid<Elem = E>>(ring: &R, c: Frac<E>) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    pub fn one<R: Pid<Elem = E>>(ring: &R) -> Self {
        Self::constant(ring, Frac::one(ring))
    }

    /// The variable `X`.
    pub fn x<R: Pid<Elem = E>>(ring: &R) -> Self {
        Self::from_coeffs(ring, vec![Frac::zero(ring), Frac::one(ring)])
    }

    /// `c * X^k`.
    pub fn monomial<R: Pid<Elem = E>>(ring: &R, c: Frac<E>, k: usize) -> Self {
        let mut coeffs = vec![Frac::zero(ring); k];
        coeffs.push(c);
        Self::from_coeffs(ring, coeffs)
    }

    fn trim<R: Pid<Elem = E>>(&mut self, ring: &R) {
        while self.coeffs.last().is_some_and(|c| c.is_zero(ring)) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Frac<E>] {
        &self.coeffs
    }

    pub fn coeff<R: Pid<Elem = E>>(&self, ring: &R, k: usize) -> Frac<E> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Frac::zero(ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Frac<E>> {
        self.coeffs.last()
    }

    /// Coefficients as ring elements when they all lie in ℛ.
    pub fn ring_coeffs<R: Pid<Elem = E>>(&self, ring: &R) -> Option<Vec<E>> {
        self.coeffs.iter().map(|c| c.to_elem(ring)).collect()
    }

    pub fn has_ring_coeffs<R: Pid<Elem = E>>(&self, ring: &R) -> bool {
        self.coeffs.iter().all(|c| c.is_integral(ring))
    }

    /// Normalized least common denominator `B` of the coefficients, so that
    /// `B * self` has coefficients in ℛ.
    pub fn denominator<R: Pid<Elem = E>>(&self, ring: &R) -> E {
        self.coeffs
            .iter()
            .fold(ring.one(), |acc, c| ring.lcm(&acc, c.denom()))
    }

    /// Writes `self = Q / B` with `Q` over ℛ and `B` the least common denominator.
    pub fn clear_denominators<R: Pid<Elem = E>>(&self, ring: &R) -> (Vec<E>, E) {
        let b = self.denominator(ring);
        let q = self
            .coeffs
            .iter()
            .map(|c| c.mul_elem(ring, &b).to_elem(ring).expect("lcm clears denominators"))
            .collect();
        (q, b)
    }

    pub fn add<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(ring, i).add(ring, &o.coeff(ring, i)))
            .collect();
        Self::from_coeffs(ring, coeffs)
    }

    pub fn neg<R: Pid<Elem = E>>(&self, ring: &R) -> Self {
        FieldPoly { coeffs: self.coeffs.iter().map(|c| c.neg(ring)).collect() }
    }

    pub fn sub<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        self.add(ring, &o.neg(ring))
    }

    pub fn mul<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Frac::zero(ring); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero(ring) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(ring, &a.mul(ring, b));
            }
        }
        Self::from_coeffs(ring, out)
    }

    pub fn scale<R: Pid<Elem = E>>(&self, ring: &R, c: &Frac<E>) -> Self {
        Self::from_coeffs(ring, self.coeffs.iter().map(|a| a.mul(ring, c)).collect())
    }

    pub fn scale_elem<R: Pid<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.scale(ring, &Frac::from_elem(ring, c.clone()))
    }

    pub fn pow<R: Pid<Elem = E>>(&self, ring: &R, e: u32) -> Self {
        (0..e).fold(Self::one(ring), |acc, _| acc.mul(ring, self))
    }

    /// Division with remainder in 𝒦[X]. Panics when `d` is zero.
    pub fn div_rem<R: Pid<Elem = E>>(&self, ring: &R, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv(ring);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Frac::zero(ring); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].mul(ring, &lead_inv);
            if c.is_zero(ring) {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub(ring, &c.mul(ring, b));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(ring, q), Self::from_coeffs(ring, r))
    }

    pub fn monic<R: Pid<Elem = E>>(&self, ring: &R) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(ring, &l.inv(ring)),
        }
    }

    /// Monic gcd in 𝒦[X] (zero when both inputs are zero).
    pub fn gcd<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(ring, &b).1;
            a = b;
            b = r;
        }
        a.monic(ring)
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` the monic gcd.
    pub fn xgcd<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(ring), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(ring));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(ring, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(ring, &q.mul(ring, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(ring, &q.mul(ring, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv(ring);
                (r0.scale(ring, &li), s0.scale(ring, &li), t0.scale(ring, &li))
            }
        }
    }

    pub fn derivative<R: Pid<Elem = E>>(&self, ring: &R) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_elem(ring, &ring.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(ring, coeffs)
    }

    /// Separable iff `gcd(P, P')` is constant.
    pub fn is_separable<R: Pid<Elem = E>>(&self, ring: &R) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(ring, &self.derivative(ring)).degree() == Some(0)
    }

    /// `self(inner(X))`.
    pub fn compose<R: Pid<Elem = E>>(&self, ring: &R, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(ring, inner).add(ring, &Self::constant(ring, c.clone()))
        })
    }

    /// Horner evaluation at a field element.
    pub fn eval<R: Pid<Elem = E>>(&self, ring: &R, x: &Frac<E>) -> Frac<E> {
        self.coeffs
            .iter()
            .rev()
            .fold(Frac::zero(ring), |acc, c| acc.mul(ring, x).add(ring, c))
    }

    /// Evaluation at a ring element, reporting membership of the value in ℛ.
    pub fn evaluate<R: Pid<Elem = E>>(&self, ring: &R, m: &E) -> Evaluation<E> {
        let value = self.eval(ring, &Frac::from_elem(ring, m.clone()));
        let in_ring = value.is_integral(ring);
        Evaluation { value, in_ring }
    }

    /// The value at `m` as a ring element, or `NotInRing`.
    pub fn eval_in_ring<R: Pid<Elem = E>>(&self, ring: &R, m: &E) -> Result<E, Error> {
        let v = self.eval(ring, &Frac::from_elem(ring, m.clone()));
        v.to_elem(ring).ok_or_else(|| Error::NotInRing(v.format(ring)))
    }

    /// Renders in the text syntax, highest degree first: `1/2*x^2-1/2*x`.
    pub fn format<R: Pid<Elem = E>>(&self, ring: &R) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero(ring) {
                continue;
            }
            let mut body = c.format(ring);
            let negative = body.starts_with('-') && wrap(&body, "+-") == body;
            if negative {
                body.remove(0);
            }
            if k > 0 {
                body = wrap(&body, "+-");
            }
            let term = match (k, body.as_str()) {
                (0, _) => body.clone(),
                (_, "1") => monomial_name(k),
                _ => format!("{body}*{}", monomial_name(k)),
            };
            if negative {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            s.push_str(&term);
        }
        s
    }
}

fn monomial_name(k: usize) -> String {
    if k == 1 {
        "x".into()
    } else {
        format!("x^{k}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FpPolyRing, Integers};
    use crate::text::parse_poly;
    use num_bigint::BigInt;

    fn zp(s: &str) -> FieldPoly<BigInt> {
        parse_poly(&Integers::default(), s).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let r = Integers::default();
        let p = zp("x^6+3*x^5+x^2+x+21");
        assert_eq!(p.eval_in_ring(&r, &BigInt::from(0)).unwrap(), BigInt::from(21));
        let b = zp("1/2*x^2-1/2*x");
        let e = b.evaluate(&r, &BigInt::from(5));
        assert_eq!(e.value.format(&r), "10");
        assert!(e.in_ring);
        let half = Frac::new(&r, BigInt::from(1), BigInt::from(2));
        let v = b.eval(&r, &half);
        assert_eq!(v.format(&r), "-1/8");
        assert!(!v.is_integral(&r));
    }

    #[test]
    fn compose_examples() {
        let r = Integers::default();
        assert_eq!(zp("x^2+1").compose(&r, &zp("1+2*x")), zp("4*x^2+4*x+2"));
        let p = zp("x^3-7*x+1/3");
        assert_eq!(p.compose(&r, &FieldPoly::x(&r)), p);
        assert_eq!(zp("1/2*x^2-1/2*x").compose(&r, &zp("2*x")), zp("2*x^2-x"));
    }

    #[test]
    fn separability() {
        let r = Integers::default();
        assert!(zp("x^2+1").is_separable(&r));
        assert!(!zp("(x-1)^2").is_separable(&r));
        let f = FpPolyRing::new(3).unwrap();
        // 12 = 0 in characteristic 3, so X^12 + t^5 has zero derivative.
        let p = parse_poly(&f, "x^12+t^5").unwrap();
        assert!(p.derivative(&f).is_zero());
        assert!(!p.is_separable(&f));
        assert!(parse_poly(&f, "x^4+t^5").unwrap().is_separable(&f));
        // X^3 + t is inseparable over F_3(t): its derivative vanishes.
        let q = parse_poly(&f, "x^3+t").unwrap();
        assert!(!q.is_separable(&f));
    }

    #[test]
    fn xgcd_identity() {
        let r = Integers::default();
        let a = zp("x^3-2*x+1/5");
        let b = zp("3*x^2+x-4");
        let (g, s, t) = a.xgcd(&r, &b);
        assert_eq!(s.mul(&r, &a).add(&r, &t.mul(&r, &b)), g);
        assert_eq!(g, a.gcd(&r, &b));
    }

    #[test]
    fn format_round_trip() {
        let r = Integers::default();
        for s in ["1/2*x^2-1/2*x", "x^6+3*x^5+x^2+x+21", "-x^3+2", "-3/7*x", "0"] {
            assert_eq!(zp(s).format(&r), s);
        }
        let f = FpPolyRing::new(3).unwrap();
        let p = parse_poly(&f, "(t+1)*x^2+2*t*x+1/t").unwrap();
        assert_eq!(p.format(&f), "(t+1)*x^2+2*t*x+1/t");
    }
}
