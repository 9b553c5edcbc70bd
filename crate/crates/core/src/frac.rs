//! Elements of the fraction field 𝒦 of a [`Pid`].

use crate::ring::Pid;

/// `num/den` in lowest terms with `den` the canonical representative of its
/// associate class (positive, monic, or a power of p). Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frac<E> {
    num: E,
    den: E,
}

impl<E: Clone> Frac<E> {
    pub fn numer(&self) -> &E {
        &self.num
    }

    pub fn denom(&self) -> &E {
        &self.den
    }

    pub fn into_parts(self) -> (E, E) {
        (self.num, self.den)
    }
}

impl<E: Clone + PartialEq> Frac<E> {
    /// Builds `num/den` and reduces it. Panics when `den` is zero.
    pub fn new<R: Pid<Elem = E>>(ring: &R, num: E, den: E) -> Self {
        assert!(!ring.is_zero(&den), "zero denominator");
        if ring.is_zero(&num) {
            return Frac::zero(ring);
        }
        let g = ring.gcd(&num, &den);
        let num = ring.exact_div(&num, &g).expect("gcd divides");
        let den = ring.exact_div(&den, &g).expect("gcd divides");
        let (unit, den) = ring.normal_form(&den);
        let num = ring.mul(&num, &ring.unit_inverse(&unit));
        Frac { num, den }
    }

    pub fn from_elem<R: Pid<Elem = E>>(ring: &R, a: E) -> Self {
        Frac { num: a, den: ring.one() }
    }

    pub fn zero<R: Pid<Elem = E>>(ring: &R) -> Self {
        Frac { num: ring.zero(), den: ring.one() }
    }

    pub fn one<R: Pid<Elem = E>>(ring: &R) -> Self {
        Frac { num: ring.one(), den: ring.one() }
    }

    pub fn is_zero<R: Pid<Elem = E>>(&self, ring: &R) -> bool {
        ring.is_zero(&self.num)
    }

    /// True when the element lies in the ring itself.
    pub fn is_integral<R: Pid<Elem = E>>(&self, ring: &R) -> bool {
        ring.is_unit(&self.den)
    }

    /// The ring element when integral.
    pub fn to_elem<R: Pid<Elem = E>>(&self, ring: &R) -> Option<E> {
        self.is_integral(ring)
            .then(|| ring.mul(&self.num, &ring.unit_inverse(&self.den)))
    }

    pub fn add<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        if ring.is_one(&self.den) && ring.is_one(&o.den) {
            return Frac::from_elem(ring, ring.add(&self.num, &o.num));
        }
        Frac::new(
            ring,
            ring.add(&ring.mul(&self.num, &o.den), &ring.mul(&o.num, &self.den)),
            ring.mul(&self.den, &o.den),
        )
    }

    pub fn neg<R: Pid<Elem = E>>(&self, ring: &R) -> Self {
        Frac { num: ring.neg(&self.num), den: self.den.clone() }
    }

    pub fn sub<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        self.add(ring, &o.neg(ring))
    }

    pub fn mul<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        if ring.is_one(&self.den) && ring.is_one(&o.den) {
            return Frac::from_elem(ring, ring.mul(&self.num, &o.num));
        }
        Frac::new(ring, ring.mul(&self.num, &o.num), ring.mul(&self.den, &o.den))
    }

    pub fn mul_elem<R: Pid<Elem = E>>(&self, ring: &R, a: &E) -> Self {
        self.mul(ring, &Frac::from_elem(ring, a.clone()))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv<R: Pid<Elem = E>>(&self, ring: &R) -> Self {
        Frac::new(ring, self.den.clone(), self.num.clone())
    }

    pub fn div<R: Pid<Elem = E>>(&self, ring: &R, o: &Self) -> Self {
        self.mul(ring, &o.inv(ring))
    }

    pub fn pow<R: Pid<Elem = E>>(&self, ring: &R, e: u32) -> Self {
        Frac { num: ring.pow(&self.num, e), den: ring.pow(&self.den, e) }
    }

    pub fn format<R: Pid<Elem = E>>(&self, ring: &R) -> String {
        let num = ring.format_elem(&self.num);
        if ring.is_one(&self.den) {
            return num;
        }
        let den = ring.format_elem(&self.den);
        format!("{}/{}", wrap(&num, "+-"), wrap(&den, "+-*/"))
    }
}

/// Parenthesizes `s` when one of `ops` occurs outside parentheses (past a
/// leading sign).
pub(crate) fn wrap(s: &str, ops: &str) -> String {
    let mut depth = 0i32;
    let compound = s.char_indices().any(|(i, ch)| match ch {
        '(' => {
            depth += 1;
            false
        }
        ')' => {
            depth -= 1;
            false
        }
        _ => i > 0 && depth == 0 && ops.contains(ch),
    });
    if compound {
        format!("({s})")
    } else {
        s.to_string()
    }
}
