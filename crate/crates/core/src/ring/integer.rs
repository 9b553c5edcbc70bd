use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor_int::{factor_biguint, is_probable_prime, primes_up_to, IntFactorConfig};
use super::{Factored, Pid, PrimeEnumeration};
use crate::Error;

/// The ring ℤ of arbitrary-precision integers.
#[derive(Clone, Debug, Default)]
pub struct Integers {
    pub factor_config: IntFactorConfig,
}

impl Integers {
    pub fn with_config(factor_config: IntFactorConfig) -> Self {
        Integers { factor_config }
    }
}

impl Pid for Integers {
    type Elem = BigInt;

    fn tag(&self) -> String {
        "z".into()
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    /// Floor division by |b|, so remainders are always in `0..|b|`.
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        assert!(!b.is_zero(), "division by zero");
        let r = a.mod_floor(&b.abs());
        let q = (a - &r) / b;
        (q, r)
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn normal_form(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (-BigInt::one(), -a)
        } else {
            (BigInt::one(), a.clone())
        }
    }

    fn unit_inverse(&self, u: &BigInt) -> BigInt {
        assert!(self.is_unit(u), "not a unit");
        u.clone()
    }

    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }

    fn factor(&self, a: &BigInt) -> Result<Factored<BigInt>, Error> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (unit, mag) = self.normal_form(a);
        let factors = factor_biguint(mag.magnitude(), &self.factor_config)?
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
        Ok(Factored { unit, factors })
    }

    fn is_prime(&self, a: &BigInt) -> Result<bool, Error> {
        Ok(is_probable_prime(a.magnitude()))
    }

    fn spec_finite(&self) -> bool {
        false
    }

    fn enumerate_primes(&self, bound: u64) -> PrimeEnumeration<BigInt> {
        PrimeEnumeration {
            primes: primes_up_to(bound).into_iter().map(BigInt::from).collect(),
            spec_finite: false,
        }
    }

    fn candidate(&self, index: u64) -> BigInt {
        let k = BigInt::from(index.div_ceil(2));
        if index % 2 == 1 {
            k
        } else {
            -k
        }
    }

    fn residue_system(&self, modulus: &BigInt, cap: u64) -> Option<Vec<BigInt>> {
        let m = modulus.magnitude().to_u64()?;
        (m <= cap).then(|| (0..m).map(BigInt::from).collect())
    }

    fn sign(&self, a: &BigInt) -> Option<Ordering> {
        Some(a.sign().cmp(&Sign::NoSign))
    }

    fn binomial_coefficients(
        &self,
        p: &crate::poly::FieldPoly<BigInt>,
    ) -> Option<Vec<crate::frac::Frac<BigInt>>> {
        Some(crate::poly::to_binomial(self, p).coeffs)
    }

    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gcd_and_xgcd() {
        let r = Integers::default();
        assert_eq!(r.gcd(&z(12), &z(18)), z(6));
        assert_eq!(r.gcd(&z(0), &z(0)), z(0));
        assert_eq!(r.gcd(&z(-4), &z(0)), z(4));
        assert_eq!(r.xgcd(&z(3), &z(5)), (z(1), z(2), z(-1)));
        let (g, u, v) = r.xgcd(&z(0), &z(-7));
        assert_eq!((g.clone(), u.clone()), (z(7), z(0)));
        assert!(r.is_unit(&v));
        assert_eq!(&v * z(-7), g);
    }

    #[test]
    fn units_and_factoring() {
        let r = Integers::default();
        assert!(r.is_unit(&z(-1)));
        assert!(!r.is_unit(&z(0)));
        let f = r.factor(&z(-12)).unwrap();
        assert_eq!(f.unit, z(-1));
        assert_eq!(f.factors, vec![(z(2), 2), (z(3), 1)]);
        assert!(matches!(r.factor(&z(0)), Err(Error::ZeroInput)));
        assert_eq!(r.factor(&z(1)).unwrap().factors, vec![]);
    }

    #[test]
    fn primes_below_ten() {
        let r = Integers::default();
        let e = r.enumerate_primes(10);
        assert_eq!(e.primes, vec![z(2), z(3), z(5), z(7)]);
        assert!(!e.spec_finite);
    }

    #[test]
    fn candidate_order() {
        let r = Integers::default();
        let c: Vec<_> = (0..5).map(|i| r.candidate(i)).collect();
        assert_eq!(c, vec![z(0), z(1), z(-1), z(2), z(-2)]);
    }

    #[test]
    fn floor_remainders() {
        let r = Integers::default();
        assert_eq!(r.div_rem(&z(-7), &z(3)), (z(-3), z(2)));
        assert_eq!(r.div_rem(&z(-7), &z(-3)), (z(3), z(2)));
        assert_eq!(r.div_rem(&z(7), &z(-3)), (z(-2), z(1)));
    }
}
