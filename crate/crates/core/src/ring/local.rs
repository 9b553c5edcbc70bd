use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Factored, Pid, PrimeEnumeration};
use crate::Error;

/// Element `num/den` of ℤ_(p): lowest terms, `den > 0`, `p ∤ den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocElem {
    num: BigInt,
    den: BigInt,
}

impl LocElem {
    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }
}

/// The localization ℤ_(p) of the integers at a prime `p`: rationals whose
/// denominator is prime to `p`. Its only prime (up to units) is `p`.
#[derive(Clone, Debug)]
pub struct Localized {
    p: BigInt,
}

impl Localized {
    pub fn new(p: u64) -> Result<Self, Error> {
        if !super::is_probable_prime(&p.into()) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        Ok(Localized { p: BigInt::from(p) })
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    /// Builds `num/den`; fails if `p` divides the reduced denominator.
    pub fn fraction(&self, num: BigInt, den: BigInt) -> Result<LocElem, Error> {
        if den.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if den.is_multiple_of(&self.p) {
            return Err(Error::NotInRing(format!("{num}/{den}")));
        }
        Ok(LocElem { num, den })
    }

    fn make(&self, num: BigInt, den: BigInt) -> LocElem {
        self.fraction(num, den).expect("denominator stays prime to p")
    }

    /// p-adic valuation of a nonzero element.
    pub fn vp(&self, a: &LocElem) -> u32 {
        assert!(!a.num.is_zero(), "valuation of zero");
        let mut v = 0;
        let mut n = a.num.clone();
        while n.is_multiple_of(&self.p) {
            n /= &self.p;
            v += 1;
        }
        v
    }

    fn p_power(&self, k: u32) -> BigInt {
        num_traits::pow(self.p.clone(), k as usize)
    }
}

impl Pid for Localized {
    type Elem = LocElem;

    fn tag(&self) -> String {
        format!("zloc:{}", self.p)
    }

    fn zero(&self) -> LocElem {
        LocElem {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    fn one(&self) -> LocElem {
        LocElem {
            num: BigInt::one(),
            den: BigInt::one(),
        }
    }

    fn from_i64(&self, n: i64) -> LocElem {
        self.from_bigint(&BigInt::from(n))
    }

    fn from_bigint(&self, n: &BigInt) -> LocElem {
        LocElem {
            num: n.clone(),
            den: BigInt::one(),
        }
    }

    fn add(&self, a: &LocElem, b: &LocElem) -> LocElem {
        self.make(&a.num * &b.den + &b.num * &a.den, &a.den * &b.den)
    }

    fn sub(&self, a: &LocElem, b: &LocElem) -> LocElem {
        self.make(&a.num * &b.den - &b.num * &a.den, &a.den * &b.den)
    }

    fn mul(&self, a: &LocElem, b: &LocElem) -> LocElem {
        self.make(&a.num * &b.num, &a.den * &b.den)
    }

    fn neg(&self, a: &LocElem) -> LocElem {
        LocElem {
            num: -&a.num,
            den: a.den.clone(),
        }
    }

    fn is_zero(&self, a: &LocElem) -> bool {
        a.num.is_zero()
    }

    /// Euclidean norm is the p-adic valuation: `b` divides `a` exactly when
    /// `v(a) >= v(b)`, otherwise the remainder is `a` itself.
    fn div_rem(&self, a: &LocElem, b: &LocElem) -> (LocElem, LocElem) {
        assert!(!b.num.is_zero(), "division by zero");
        if a.num.is_zero() {
            return (self.zero(), self.zero());
        }
        if self.vp(a) >= self.vp(b) {
            (self.make(&a.num * &b.den, &a.den * &b.num), self.zero())
        } else {
            (self.zero(), a.clone())
        }
    }

    fn is_unit(&self, a: &LocElem) -> bool {
        !a.num.is_zero() && !a.num.is_multiple_of(&self.p)
    }

    fn normal_form(&self, a: &LocElem) -> (LocElem, LocElem) {
        if a.num.is_zero() {
            return (self.one(), self.zero());
        }
        let pk = self.p_power(self.vp(a));
        let rep = self.from_bigint(&pk);
        let unit = self.make(a.num.clone(), &a.den * pk);
        (unit, rep)
    }

    fn unit_inverse(&self, u: &LocElem) -> LocElem {
        assert!(self.is_unit(u), "not a unit");
        self.make(u.den.clone(), u.num.clone())
    }

    fn factor(&self, a: &LocElem) -> Result<Factored<LocElem>, Error> {
        if a.num.is_zero() {
            return Err(Error::ZeroInput);
        }
        let v = self.vp(a);
        let (unit, _) = self.normal_form(a);
        let factors = if v > 0 {
            vec![(self.from_bigint(&self.p), v)]
        } else {
            Vec::new()
        };
        Ok(Factored { unit, factors })
    }

    fn is_prime(&self, a: &LocElem) -> Result<bool, Error> {
        Ok(!a.num.is_zero() && self.vp(a) == 1)
    }

    fn spec_finite(&self) -> bool {
        true
    }

    fn enumerate_primes(&self, _bound: u64) -> PrimeEnumeration<LocElem> {
        PrimeEnumeration {
            primes: vec![self.from_bigint(&self.p)],
            spec_finite: true,
        }
    }

    /// Integers in the order 0, 1, -1, 2, -2, ...
    fn candidate(&self, index: u64) -> LocElem {
        let k = BigInt::from(index.div_ceil(2));
        self.from_bigint(&if index % 2 == 1 { k } else { -k })
    }

    /// Residues modulo `u * p^k` are represented by `0..p^k`.
    fn residue_system(&self, modulus: &LocElem, cap: u64) -> Option<Vec<LocElem>> {
        let pk = self.p_power(self.vp(modulus)).to_u64()?;
        (pk <= cap).then(|| (0..pk).map(|i| self.from_bigint(&i.into())).collect())
    }

    /// Integer representative in `0..p^k` for moduli `u * p^k`.
    fn canonical_residue(&self, a: &LocElem, m: &LocElem) -> LocElem {
        let pk = self.p_power(self.vp(m));
        // a = n/d with d invertible mod p^k.
        let inv = a.den.extended_gcd(&pk).x;
        self.from_bigint(&(&a.num * inv).mod_floor(&pk))
    }

    fn format_elem(&self, a: &LocElem) -> String {
        if a.den.is_one() {
            a.num.to_string()
        } else {
            format!("{}/{}", a.num, a.den)
        }
    }
}
