//! Total primitivity and the obstruction set `𝒫(P, 𝒜)`.
//!
//! Over ℤ[X] the obstructions on a progression `𝒜 = {a + kb}` split into
//! three classes: primes dividing every coefficient (P1), primes dividing
//! `gcd(P(a), b)` (P2) and primes `p ≤ deg P` for which `P` reduces to zero
//! modulo `X^p - X` in `𝔽_p[X]` (P3). Every other case goes through the
//! value gcd of `P ∘ (a + bX)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::frac::Frac;
use crate::poly::{gcd_values, FieldPoly};
use crate::ring::{Integers, Pid};
use crate::Error;

/// `{a + kb}`; the trivial progression `a = 0, b = 1` is the whole ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithProgression<E> {
    pub a: E,
    pub b: E,
}

impl<E: Clone + PartialEq> ArithProgression<E> {
    pub fn new<R: Pid<Elem = E>>(ring: &R, a: E, b: E) -> Result<Self, Error> {
        if ring.is_zero(&b) {
            return Err(Error::InvalidParameter("progression step b must be nonzero".into()));
        }
        Ok(ArithProgression { a, b })
    }

    pub fn trivial<R: Pid<Elem = E>>(ring: &R) -> Self {
        ArithProgression {
            a: ring.zero(),
            b: ring.one(),
        }
    }

    pub fn is_trivial<R: Pid<Elem = E>>(&self, ring: &R) -> bool {
        ring.is_unit(&self.b)
    }

    /// `a + bX`.
    pub fn affine<R: Pid<Elem = E>>(&self, ring: &R) -> FieldPoly<E> {
        FieldPoly::from_ring_coeffs(ring, vec![self.a.clone(), self.b.clone()])
    }

    /// `a + kb`.
    pub fn term<R: Pid<Elem = E>>(&self, ring: &R, k: &E) -> E {
        ring.add(&self.a, &ring.mul(k, &self.b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ObstructionClass {
    P1,
    P2,
    P3,
    #[serde(rename = "binomial-gcd")]
    BinomialGcd,
}

impl ObstructionClass {
    pub fn tag(self) -> &'static str {
        match self {
            ObstructionClass::P1 => "P1",
            ObstructionClass::P2 => "P2",
            ObstructionClass::P3 => "P3",
            ObstructionClass::BinomialGcd => "binomial-gcd",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction<E> {
    pub prime: E,
    pub classes: Vec<ObstructionClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityReport<E> {
    pub obstructions: Vec<Obstruction<E>>,
    /// True iff no prime divides every value on the progression.
    pub is_totally_primitive: bool,
    /// The value gcd for the trivial progression, `gcd(P(a), b)` otherwise.
    pub gamma: E,
}

impl<E> PrimitivityReport<E> {
    pub fn primes(&self) -> impl Iterator<Item = &E> {
        self.obstructions.iter().map(|o| &o.prime)
    }
}

/// Reduction of an integer polynomial modulo `X^p - X` over `𝔽_p`, as
/// ascending coefficients of degree `< p` (trimmed).
pub fn reduce_mod_xp_minus_x(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out = vec![0u64; p as usize];
    for (e, c) in coeffs.iter().enumerate() {
        let c = c.mod_floor(&pb).to_u64().unwrap();
        if c == 0 {
            continue;
        }
        let k = if e == 0 { 0 } else { (e - 1) % (p as usize - 1) + 1 };
        out[k] = (out[k] + c) % p;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Obstruction set of `P ∈ ℤ[X]` on a progression, classified into P1/P2/P3.
pub fn obstruction_set(
    ring: &Integers,
    p: &FieldPoly<BigInt>,
    prog: &ArithProgression<BigInt>,
) -> Result<PrimitivityReport<BigInt>, Error> {
    let n = p.degree().ok_or(Error::ZeroInput)?;
    let coeffs = p.ring_coeffs(ring).ok_or(Error::NonIntegerCoefficients)?;
    let mut found: BTreeMap<BigInt, Vec<ObstructionClass>> = BTreeMap::new();
    let mut tag = |q: &BigInt, c: ObstructionClass| found.entry(q.clone()).or_default().push(c);

    let content = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    for q in ring.factor(&content)?.primes() {
        tag(q, ObstructionClass::P1);
    }
    let pa = p.eval_in_ring(ring, &prog.a)?;
    let gamma2 = ring.gcd(&pa, &prog.b);
    if !prog.is_trivial(ring) {
        for q in ring.factor(&gamma2)?.primes() {
            tag(q, ObstructionClass::P2);
        }
    }
    let p0 = &coeffs[0];
    for q in ring.enumerate_primes(n as u64).primes {
        if !p0.is_zero() && !p0.is_multiple_of(&q) {
            continue;
        }
        if reduce_mod_xp_minus_x(&coeffs, q.to_u64().unwrap()).is_empty() {
            tag(&q, ObstructionClass::P3);
        }
    }
    let gamma = if prog.is_trivial(ring) {
        gcd_values(ring, p)?
    } else {
        gamma2
    };
    Ok(PrimitivityReport {
        is_totally_primitive: found.is_empty(),
        obstructions: found
            .into_iter()
            .map(|(prime, classes)| Obstruction { prime, classes })
            .collect(),
        gamma,
    })
}

/// Obstructions from the value gcd of `P ∘ (a + bX)`; valid over every
/// backend and for integrally valued `P` with non-ring coefficients.
pub fn value_gcd_report<R: Pid>(
    ring: &R,
    p: &FieldPoly<R::Elem>,
    prog: &ArithProgression<R::Elem>,
) -> Result<PrimitivityReport<R::Elem>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let composed = p.compose(ring, &prog.affine(ring));
    let g = gcd_values(ring, &composed)?;
    let obstructions = if ring.is_zero(&g) {
        Vec::new()
    } else {
        ring.factor(&g)?
            .factors
            .into_iter()
            .map(|(prime, _)| Obstruction {
                prime,
                classes: vec![ObstructionClass::BinomialGcd],
            })
            .collect()
    };
    let gamma = if prog.is_trivial(ring) {
        gcd_values(ring, p)?
    } else {
        ring.gcd(&p.eval_in_ring(ring, &prog.a)?, &prog.b)
    };
    Ok(PrimitivityReport {
        is_totally_primitive: obstructions.is_empty(),
        obstructions,
        gamma,
    })
}

/// Structural classification over ℤ[X], value gcd for everything else.
pub fn check_integer(
    ring: &Integers,
    p: &FieldPoly<BigInt>,
    prog: &ArithProgression<BigInt>,
) -> Result<PrimitivityReport<BigInt>, Error> {
    if p.has_ring_coeffs(ring) {
        obstruction_set(ring, p, prog)
    } else {
        value_gcd_report(ring, p, prog)
    }
}

/// Whether the gcd of all values of an integrally valued `P` is a unit.
pub fn is_totally_primitive<R: Pid>(ring: &R, p: &FieldPoly<R::Elem>) -> Result<bool, Error> {
    Ok(ring.is_unit(&gcd_values(ring, p)?))
}

/// Result of restricting a totally primitive `P ∈ ℤ[X]` to a progression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedObstructions {
    /// `gcd(P(a), b)`.
    pub gamma: BigInt,
    /// The gcd of all values of `P ∘ (a + bX)`; a multiple of `gamma`.
    pub value_gcd: BigInt,
    /// `(1/γ) P ∘ (a + bX)`.
    pub composed: FieldPoly<BigInt>,
    /// Obstructions of `composed`; empty iff `value_gcd = gamma`.
    pub report: PrimitivityReport<BigInt>,
}

pub fn composed_obstructions(
    ring: &Integers,
    p: &FieldPoly<BigInt>,
    prog: &ArithProgression<BigInt>,
) -> Result<ComposedObstructions, Error> {
    if !p.has_ring_coeffs(ring) {
        return Err(Error::NonIntegerCoefficients);
    }
    let g = gcd_values(ring, p)?;
    if !ring.is_unit(&g) {
        return Err(Error::NotTotallyPrimitive {
            gcd: ring.format_elem(&g),
        });
    }
    let gamma = ring.gcd(&p.eval_in_ring(ring, &prog.a)?, &prog.b);
    let full = p.compose(ring, &prog.affine(ring));
    let value_gcd = gcd_values(ring, &full)?;
    let composed = full.scale(ring, &Frac::new(ring, BigInt::one(), gamma.clone()));
    let report = obstruction_set(ring, &composed, &ArithProgression::trivial(ring))?;
    Ok(ComposedObstructions {
        gamma,
        value_gcd,
        composed,
        report,
    })
}
