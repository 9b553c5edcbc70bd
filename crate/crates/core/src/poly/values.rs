//! Value-set invariants: integer-valuedness and the gcd of `P(ℛ)`.
//!
//! Over ℤ both come from the binomial basis. Elsewhere, write `P = Q/B` with
//! `Q` over ℛ; for a prime power `π^k`, `Q(a) mod π^k` depends only on
//! `a mod π^k`, so a finite residue system decides every divisibility
//! question about the values.

use super::FieldPoly;
use crate::frac::Frac;
use crate::ring::Pid;
use crate::Error;

/// Largest residue system enumerated by the generic backends.
pub const RESIDUE_CAP: u64 = 1 << 20;

fn residues<R: Pid>(ring: &R, modulus: &R::Elem) -> Result<Vec<R::Elem>, Error> {
    ring.residue_system(modulus, RESIDUE_CAP)
        .ok_or_else(|| Error::SearchBudgetExhausted {
            stage: format!("residue system modulo {}", ring.format_elem(modulus)),
            budget: RESIDUE_CAP,
        })
}

pub(crate) fn eval_ring_coeffs<R: Pid>(ring: &R, q: &[R::Elem], a: &R::Elem) -> R::Elem {
    q.iter()
        .rev()
        .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, a), c))
}

/// Whether `P(ℛ) ⊆ ℛ`.
pub fn is_integrally_valued<R: Pid>(ring: &R, p: &FieldPoly<R::Elem>) -> Result<bool, Error> {
    if let Some(a) = ring.binomial_coefficients(p) {
        return Ok(a.iter().all(|c| c.is_integral(ring)));
    }
    let (q, b) = p.clear_denominators(ring);
    if ring.is_unit(&b) {
        return Ok(true);
    }
    for (pi, e) in ring.factor(&b)?.factors {
        let modulus = ring.pow(&pi, e);
        for r in residues(ring, &modulus)? {
            if !ring.divides(&modulus, &eval_ring_coeffs(ring, &q, &r)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Normalized generator of the ideal spanned by `P(ℛ)`.
pub fn gcd_values<R: Pid>(ring: &R, p: &FieldPoly<R::Elem>) -> Result<R::Elem, Error> {
    if let Some(a) = ring.binomial_coefficients(p) {
        if let Some(bad) = a.iter().find(|c| !c.is_integral(ring)) {
            return Err(Error::NotIntegrallyValued(format!(
                "binomial coefficient {} is not integral",
                bad.format(ring)
            )));
        }
        return Ok(a.iter().fold(ring.zero(), |g, c| {
            ring.gcd(&g, &c.to_elem(ring).expect("checked integral"))
        }));
    }
    if !is_integrally_valued(ring, p)? {
        return Err(Error::NotIntegrallyValued(p.format(ring)));
    }
    let Some(n) = p.degree() else {
        return Ok(ring.zero());
    };
    // gcd of finitely many values is a multiple of the true gcd.
    let mut g = ring.zero();
    let mut idx = 0u64;
    while idx <= n as u64 || ring.is_zero(&g) {
        let v = p.eval(ring, &Frac::from_elem(ring, ring.candidate(idx)));
        g = ring.gcd(&g, &v.to_elem(ring).expect("integrally valued"));
        idx += 1;
    }
    if ring.is_unit(&g) {
        return Ok(ring.one());
    }
    let (q, b) = p.clear_denominators(ring);
    let mut out = ring.one();
    for (pi, v) in ring.factor(&g)?.factors {
        let e = if ring.is_zero(&b) { 0 } else { ring.valuation(&pi, &b) };
        let modulus = ring.pow(&pi, v + e);
        let mut least = v;
        for r in residues(ring, &modulus)? {
            let qr = eval_ring_coeffs(ring, &q, &r);
            if ring.divides(&modulus, &qr) {
                continue;
            }
            least = least.min(ring.valuation(&pi, &qr) - e);
            if least == 0 {
                break;
            }
        }
        out = ring.mul(&out, &ring.pow(&pi, least));
    }
    Ok(ring.normalize(&out))
}
