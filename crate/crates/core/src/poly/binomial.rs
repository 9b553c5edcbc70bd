//! The binomial basis `binomial(X, k) = X(X-1)...(X-k+1)/k!` over ℤ.
//!
//! A polynomial of degree `n` is determined by its values at `0..=n`; the
//! Newton forward-difference coefficients `a_k` satisfy
//! `P(n) = a_0 + a_1 C(n,1) + ... + a_n C(n,n)`, which is solved here as a
//! triangular system. `P` is integer valued iff every `a_k` is an integer.

use num_bigint::BigInt;
use num_traits::One;

use super::FieldPoly;
use crate::frac::Frac;
use crate::ring::Integers;

/// Coefficients of a polynomial in the binomial basis, `a_0..=a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialForm {
    pub coeffs: Vec<Frac<BigInt>>,
}

impl BinomialForm {
    pub fn all_integral(&self, ring: &Integers) -> bool {
        self.coeffs.iter().all(|a| a.is_integral(ring))
    }
}

/// `binomial(X, k)`.
pub fn binomial_poly(ring: &Integers, k: usize) -> FieldPoly<BigInt> {
    let mut p = FieldPoly::one(ring);
    let mut fact = BigInt::one();
    for i in 0..k {
        let factor = FieldPoly::from_ring_coeffs(ring, vec![BigInt::from(-(i as i64)), BigInt::one()]);
        p = p.mul(ring, &factor);
        fact *= i + 1;
    }
    p.scale(ring, &Frac::new(ring, BigInt::one(), fact))
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * (n - k) / (k + 1);
        row.push(next);
    }
    row
}

/// Change of basis to the binomial basis using the recurrence
/// `a_n = P(n) - sum_{k<n} a_k C(n, k)`.
pub fn to_binomial(ring: &Integers, p: &FieldPoly<BigInt>) -> BinomialForm {
    let Some(n) = p.degree() else {
        return BinomialForm { coeffs: Vec::new() };
    };
    let mut a: Vec<Frac<BigInt>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let value = p.eval(ring, &Frac::from_elem(ring, BigInt::from(m)));
        let row = binomial_row(m);
        let partial = a
            .iter()
            .zip(&row)
            .fold(Frac::zero(ring), |acc, (ak, c)| acc.add(ring, &ak.mul_elem(ring, c)));
        a.push(value.sub(ring, &partial));
    }
    BinomialForm { coeffs: a }
}

pub fn from_binomial(ring: &Integers, form: &BinomialForm) -> FieldPoly<BigInt> {
    form.coeffs
        .iter()
        .enumerate()
        .fold(FieldPoly::zero(), |acc, (k, a)| {
            acc.add(ring, &binomial_poly(ring, k).scale(ring, a))
        })
}
