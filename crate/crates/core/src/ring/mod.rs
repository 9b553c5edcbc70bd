//! Principal ideal domains with effective Euclidean division.
//!
//! Three backends implement [`Pid`]: the integers ([`Integers`]), polynomials
//! over a prime field in the variable `t` ([`FpPoly`]) and the localization
//! of the integers at a prime ([`Localized`]). Elements are plain values; the
//! ring handle carries any parameters (the characteristic, the localizing
//! prime) and performs every operation.
//!
//! All three rings are Euclidean, so gcd, Bézout coefficients and CRT are
//! written once here on top of [`Pid::div_rem`].

use std::fmt;
use std::hash::Hash;

use crate::Error;

mod factor_int;
mod fp_poly;
mod integer;
mod local;

pub use factor_int::{is_probable_prime, IntFactorConfig};
pub use fp_poly::{FpPoly, FpPolyRing};
pub use integer::Integers;
pub use local::{LocElem, Localized};

/// A normalized prime together with its multiplicity.
pub type PrimePower<E> = (E, u32);

/// Factorization `unit * prod(prime^e)` of a nonzero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored<E> {
    pub unit: E,
    pub factors: Vec<PrimePower<E>>,
}

impl<E> Factored<E> {
    pub fn primes(&self) -> impl Iterator<Item = &E> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Result of [`Pid::enumerate_primes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEnumeration<E> {
    pub primes: Vec<E>,
    /// True when the ring has finitely many primes and `primes` lists all of them.
    pub spec_finite: bool,
}

/// A principal ideal domain with Euclidean division, unit normalization and
/// factorization.
pub trait Pid: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    /// Short backend tag as accepted by `--ring` (`z`, `fpt:3`, `zloc:5`).
    fn tag(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &num_bigint::BigInt) -> Self::Elem;

    /// Named constants understood by the text syntax besides integers
    /// (`t` in 𝔽_p[t]).
    fn atom(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Euclidean division: `a = q*b + r` with `r = 0` or `r` strictly smaller
    /// than `b` in the ring's Euclidean norm. Panics when `b` is zero.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// Splits `a = unit * rep` where `rep` is the canonical representative of
    /// the associate class of `a` (positive integer, monic polynomial, power of
    /// the localizing prime). `normal_form(0) = (1, 0)`.
    fn normal_form(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Inverse of a unit. Panics on non-units.
    fn unit_inverse(&self, u: &Self::Elem) -> Self::Elem;

    /// Complete factorization into normalized primes.
    fn factor(&self, a: &Self::Elem) -> Result<Factored<Self::Elem>, Error>;

    fn is_prime(&self, a: &Self::Elem) -> Result<bool, Error>;

    /// Whether `Spec` of the ring is finite.
    fn spec_finite(&self) -> bool;

    /// Normalized primes within `bound` (a magnitude cap for the integers, a
    /// degree cap for polynomial rings; ignored when Spec is finite).
    fn enumerate_primes(&self, bound: u64) -> PrimeEnumeration<Self::Elem>;

    /// The `index`-th element of the deterministic candidate enumeration used
    /// by searches. Integers: 0, 1, -1, 2, -2, ...; polynomials: by degree,
    /// then lexicographically on coefficients.
    fn candidate(&self, index: u64) -> Self::Elem;

    /// A complete residue system modulo a nonzero `modulus`, in ascending
    /// enumeration order, or `None` when it has more than `cap` elements.
    fn residue_system(&self, modulus: &Self::Elem, cap: u64) -> Option<Vec<Self::Elem>>;

    /// Sign of an element when the ring is ordered (`Some` only for ℤ).
    fn sign(&self, _a: &Self::Elem) -> Option<std::cmp::Ordering> {
        None
    }

    /// Parses a ring element in the polynomial text syntax (no `x`).
    fn parse_elem(&self, text: &str) -> Result<Self::Elem, Error>
    where
        Self: Sized,
    {
        crate::text::parse_elem(self, text)
    }

    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Coefficients of `p` in the binomial basis, for backends where that
    /// basis describes integer-valuedness (the integers).
    fn binomial_coefficients(
        &self,
        _p: &crate::poly::FieldPoly<Self::Elem>,
    ) -> Option<Vec<crate::frac::Frac<Self::Elem>>>
    where
        Self: Sized,
    {
        None
    }

    // Provided operations.

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        self.normal_form(a).1
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }

    /// `a / d` when `d` divides `a` exactly.
    fn exact_div(&self, a: &Self::Elem, d: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(a, d);
        self.is_zero(&r).then_some(q)
    }

    fn rem(&self, a: &Self::Elem, m: &Self::Elem) -> Self::Elem {
        self.div_rem(a, m).1
    }

    /// Normalized generator of the ideal `(a, b)`; `gcd(0, 0) = 0`.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut x = a.clone();
        let mut y = b.clone();
        while !self.is_zero(&y) {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.normalize(&x)
    }

    /// Returns `(g, u, v)` with `u*a + v*b = g = gcd(a, b)`, `g` normalized.
    fn xgcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let (unit, g) = self.normal_form(&r0);
        let inv = self.unit_inverse(&unit);
        (g, self.mul(&s0, &inv), self.mul(&t0, &inv))
    }

    fn lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let g = self.gcd(a, b);
        self.normalize(&self.mul(&self.exact_div(a, &g).expect("gcd divides"), b))
    }

    fn are_coprime(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_unit(&self.gcd(a, b))
    }

    /// Multiplicity of the prime `p` in nonzero `a`.
    fn valuation(&self, p: &Self::Elem, a: &Self::Elem) -> u32 {
        assert!(!self.is_zero(a), "valuation of zero");
        let mut v = 0;
        let mut x = a.clone();
        while let Some(q) = self.exact_div(&x, p) {
            x = q;
            v += 1;
        }
        v
    }

    /// Smallest nonnegative-style representative of `x` solving every
    /// congruence `x ≡ r (mod m)`, reduced modulo the product of the moduli.
    fn crt(&self, congruences: &[(Self::Elem, Self::Elem)]) -> Result<Self::Elem, Error> {
        let mut x = self.zero();
        let mut modulus = self.one();
        for (r, m) in congruences {
            if self.is_zero(m) {
                return Err(Error::NonCoprimeModuli(self.format_elem(m)));
            }
            let (g, u, _) = self.xgcd(&modulus, m);
            if !self.is_unit(&g) {
                return Err(Error::NonCoprimeModuli(format!(
                    "{} and {} share {}",
                    self.format_elem(&modulus),
                    self.format_elem(m),
                    self.format_elem(&g)
                )));
            }
            // x' = x + modulus * u * (r - x) reduces correctly mod m since u*modulus ≡ 1.
            let diff = self.sub(r, &x);
            let step = self.rem(&self.mul(&u, &diff), m);
            x = self.add(&x, &self.mul(&modulus, &step));
            modulus = self.mul(&modulus, m);
            x = self.canonical_residue(&x, &modulus);
        }
        Ok(x)
    }

    /// Canonical representative of `a` modulo `m`. Integer rings return the
    /// least nonnegative residue.
    fn canonical_residue(&self, a: &Self::Elem, m: &Self::Elem) -> Self::Elem {
        self.rem(a, m)
    }

    /// Recomposes a factorization.
    fn recompose(&self, f: &Factored<Self::Elem>) -> Self::Elem {
        f.factors
            .iter()
            .fold(f.unit.clone(), |acc, (p, e)| self.mul(&acc, &self.pow(p, *e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn crt_examples() {
        let r = Integers::default();
        assert_eq!(r.crt(&[(z(1), z(3)), (z(2), z(5))]).unwrap(), z(7));
        assert_eq!(r.crt(&[(z(0), z(2)), (z(1), z(9))]).unwrap(), z(10));
        assert!(matches!(
            r.crt(&[(z(0), z(6)), (z(1), z(9))]),
            Err(Error::NonCoprimeModuli(_))
        ));
        assert_eq!(r.crt(&[]).unwrap(), z(0));
    }

    #[test]
    fn crt_over_f2t() {
        let r = FpPolyRing::new(2).unwrap();
        let t = r.parse_elem("t").unwrap();
        let t1 = r.parse_elem("t+1").unwrap();
        let x = r.crt(&[(r.one(), t.clone()), (t.clone(), t1.clone())]).unwrap();
        // Reduced modulo t(t+1) = t^2+t, the solution is 1 (t ≡ 1 mod t+1 over F2).
        assert_eq!(x, r.one());
        let unreduced = r.parse_elem("t^2+t+1").unwrap();
        for y in [&x, &unreduced] {
            assert_eq!(r.rem(y, &t), r.one());
            assert_eq!(r.rem(y, &t1), r.rem(&t, &t1));
        }
    }
}
