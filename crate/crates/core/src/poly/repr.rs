use super::{gcd_values, FieldPoly};
use crate::frac::Frac;
use crate::ring::Pid;
use crate::Error;

/// `Q = (A/B) * P` with `A`, `B` coprime and `P` totally primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReprDecomposition<E> {
    pub a: E,
    pub b: E,
    pub p: FieldPoly<E>,
}

/// Splits a nonzero `Q` into a constant `A/B` and a totally primitive `P`.
///
/// `Q = R/D` with `R` over ℛ; `γ` generates the value ideal of `R`, so
/// `P = R/γ` has unit value gcd and `A/B = γ/D` in lowest terms. Units are
/// pushed into `A` so that `B` and the leading numerator of `P` are
/// normalized.
pub fn repr_decompose<R: Pid>(
    ring: &R,
    q: &FieldPoly<R::Elem>,
) -> Result<ReprDecomposition<R::Elem>, Error> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (coeffs, d) = q.clear_denominators(ring);
    let r = FieldPoly::from_ring_coeffs(ring, coeffs);
    let gamma = gcd_values(ring, &r)?;
    let mut p = r.scale(ring, &Frac::new(ring, ring.one(), gamma.clone()));
    let ab = Frac::new(ring, gamma, d);
    let (mut a, b) = ab.into_parts();
    let lead = p.leading().expect("nonzero").numer().clone();
    let (unit, _) = ring.normal_form(&lead);
    if !ring.is_one(&unit) {
        p = p.scale_elem(ring, &ring.unit_inverse(&unit));
        a = ring.mul(&a, &unit);
    }
    Ok(ReprDecomposition { a, b, p })
}

/// `f * P1 + g * P2 = c` with `f`, `g` over ℛ and `c` a nonzero ring constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate<E> {
    pub f: FieldPoly<E>,
    pub g: FieldPoly<E>,
    pub c: E,
}

impl<E: Clone + PartialEq> BezoutCertificate<E> {
    /// Re-checks the identity coefficientwise.
    pub fn holds<R: Pid<Elem = E>>(&self, ring: &R, p1: &FieldPoly<E>, p2: &FieldPoly<E>) -> bool {
        let lhs = p1.mul(ring, &self.f).add(ring, &p2.mul(ring, &self.g));
        self.f.has_ring_coeffs(ring)
            && self.g.has_ring_coeffs(ring)
            && !ring.is_zero(&self.c)
            && lhs == FieldPoly::constant(ring, Frac::from_elem(ring, self.c.clone()))
    }
}

/// Bézout identity with constant right-hand side for coprime `P1`, `P2`:
/// extended Euclid in 𝒦[X], then clearing denominators. `c` is not minimized.
pub fn bezout_constant<R: Pid>(
    ring: &R,
    p1: &FieldPoly<R::Elem>,
    p2: &FieldPoly<R::Elem>,
) -> Result<BezoutCertificate<R::Elem>, Error> {
    let (g, s, t) = p1.xgcd(ring, p2);
    if g.degree() != Some(0) {
        return Err(Error::NotCoprime(g.format(ring)));
    }
    let l = ring.lcm(&s.denominator(ring), &t.denominator(ring));
    Ok(BezoutCertificate {
        f: s.scale_elem(ring, &l),
        g: t.scale_elem(ring, &l),
        c: l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::gcd_values;
    use crate::ring::{FpPolyRing, Integers};
    use crate::text::parse_poly;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn zp(s: &str) -> FieldPoly<BigInt> {
        parse_poly(&Integers::default(), s).unwrap()
    }

    #[test]
    fn repr_examples() {
        let r = Integers::default();
        let d = repr_decompose(&r, &zp("3/2*x+3/2")).unwrap();
        assert_eq!((d.a, d.b, d.p), (BigInt::from(3), BigInt::from(2), zp("x+1")));
        let d = repr_decompose(&r, &zp("x*(x-1)")).unwrap();
        assert_eq!((d.a, d.b, d.p), (BigInt::from(2), BigInt::from(1), zp("(x^2-x)/2")));
        let tp = zp("x^6+3*x^5+x^2+x+21");
        let d = repr_decompose(&r, &tp).unwrap();
        assert_eq!((d.a, d.b, d.p), (BigInt::from(1), BigInt::from(1), tp));
        let d = repr_decompose(&r, &zp("-4*x-2")).unwrap();
        assert_eq!((d.a, d.b, d.p), (BigInt::from(-2), BigInt::from(1), zp("2*x+1")));
    }

    #[test]
    fn bezout_examples() {
        let r = Integers::default();
        let c = bezout_constant(&r, &zp("x"), &zp("x+1")).unwrap();
        assert_eq!((c.f.clone(), c.g.clone(), c.c.clone()), (zp("-1"), zp("1"), BigInt::from(1)));
        let c = bezout_constant(&r, &zp("x^2+1"), &zp("x")).unwrap();
        assert_eq!((c.f, c.g, c.c), (zp("1"), zp("-x"), BigInt::from(1)));
        let q = zp("x^2+1");
        let c = bezout_constant(&r, &q, &q.derivative(&r)).unwrap();
        assert_eq!((c.f.clone(), c.g.clone(), c.c.clone()), (zp("2"), zp("-x"), BigInt::from(2)));
        assert!(c.holds(&r, &q, &q.derivative(&r)));
        assert!(matches!(
            bezout_constant(&r, &zp("x^2-1"), &zp("x+1")),
            Err(Error::NotCoprime(_))
        ));
    }

    #[test]
    fn bezout_over_fpt() {
        let r = FpPolyRing::new(3).unwrap();
        let p1 = parse_poly(&r, "x^2+t").unwrap();
        let p2 = parse_poly(&r, "t*x+1").unwrap();
        let c = bezout_constant(&r, &p1, &p2).unwrap();
        assert!(c.holds(&r, &p1, &p2));
    }

    fn arb_int_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..=20, 2..=max_deg + 1)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn bezout_identity_holds(a in arb_int_poly(5), b in arb_int_poly(5)) {
            let r = Integers::default();
            let p1 = FieldPoly::from_ring_coeffs(&r, a.iter().map(|&c| BigInt::from(c)).collect());
            let p2 = FieldPoly::from_ring_coeffs(&r, b.iter().map(|&c| BigInt::from(c)).collect());
            prop_assume!(!p1.is_zero() && !p2.is_zero());
            match bezout_constant(&r, &p1, &p2) {
                Ok(cert) => prop_assert!(cert.holds(&r, &p1, &p2)),
                Err(Error::NotCoprime(_)) => prop_assert!(p1.gcd(&r, &p2).degree().unwrap() > 0),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }

        #[test]
        fn repr_reconstructs(coeffs in prop::collection::vec((-30i64..=30, 1i64..=12), 1..=7)) {
            let r = Integers::default();
            let q = FieldPoly::from_coeffs(&r, coeffs.iter()
                .map(|&(n, d)| Frac::new(&r, BigInt::from(n), BigInt::from(d))).collect());
            prop_assume!(!q.is_zero());
            let d = repr_decompose(&r, &q).unwrap();
            prop_assert!(r.are_coprime(&d.a, &d.b));
            prop_assert_eq!(d.p.scale(&r, &Frac::new(&r, d.a.clone(), d.b.clone())), q);
            prop_assert_eq!(gcd_values(&r, &d.p).unwrap(), BigInt::from(1));
        }
    }
}
