use num_integer::Integer;
use serde::Serialize;

use crate::ring::{FpPolyRing, Pid};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwanEntry {
    pub f: String,
    pub degree: usize,
    /// Irreducible factors of `F`, counted with multiplicity.
    pub factors: u32,
    pub separable: bool,
    pub t_divides_f: bool,
}

/// Factorization of `F = f^(4p) + t^a` for every nonzero `f` up to a degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwanReport {
    pub p: u64,
    pub a: u64,
    pub maxdeg: u32,
    pub total: u64,
    pub reducible: u64,
    /// `f` with `F` irreducible. Must be empty.
    pub irreducible: Vec<String>,
    /// Separable `F` with `t ∤ f`.
    pub parity_checked: u64,
    pub even: u64,
    /// Checked `F` with an odd factor count.
    pub odd: Vec<String>,
    pub entries: Vec<SwanEntry>,
}

impl SwanReport {
    pub fn holds(&self) -> bool {
        self.irreducible.is_empty() && self.odd.is_empty() && self.reducible == self.total
    }
}

pub fn swan_demo(p: u64, a: u64, maxdeg: u32) -> Result<SwanReport, Error> {
    swan_demo_seeded(p, a, maxdeg, None)
}

/// [`swan_demo`] with an explicit seed for the equal-degree splitting.
pub fn swan_demo_seeded(p: u64, a: u64, maxdeg: u32, seed: Option<u64>) -> Result<SwanReport, Error> {
    if p < 3 {
        return Err(Error::InvalidParameter(format!("p = {p} must be an odd prime")));
    }
    let ring = match seed {
        Some(s) => FpPolyRing::with_seed(p, s)?,
        None => FpPolyRing::new(p)?,
    };
    if !(1 < a && a < 4 * p) {
        return Err(Error::InvalidParameter(format!("a = {a} is not in 2..{}", 4 * p - 1)));
    }
    if a.gcd(&(p * (p - 1))) != 1 {
        return Err(Error::InvalidParameter(format!("a = {a} is not coprime to p(p-1) = {}", p * (p - 1))));
    }
    if maxdeg > 6 {
        return Err(Error::InvalidParameter(format!("maxdeg = {maxdeg} exceeds 6")));
    }
    let ta = ring.monomial(1, a as usize);
    let t = ring.t();
    let count = p.pow(maxdeg + 1);
    let mut report = SwanReport {
        p,
        a,
        maxdeg,
        total: 0,
        reducible: 0,
        irreducible: Vec::new(),
        parity_checked: 0,
        even: 0,
        odd: Vec::new(),
        entries: Vec::with_capacity(count as usize),
    };
    for idx in 1..count {
        let f = ring.candidate(idx);
        let big_f = ring.add(&ring.pow(&f, 4 * p as u32), &ta);
        let factored = ring.factor(&big_f)?;
        let factors: u32 = factored.factors.iter().map(|(_, e)| e).sum();
        let separable = ring.gcd(&big_f, &ring.derivative(&big_f)).degree() == Some(0);
        let t_divides_f = ring.divides(&t, &f);
        let name = ring.format_elem(&f);
        report.total += 1;
        if factors >= 2 {
            report.reducible += 1;
        } else {
            report.irreducible.push(name.clone());
        }
        if separable && !t_divides_f {
            report.parity_checked += 1;
            if factors.is_multiple_of(2) {
                report.even += 1;
            } else {
                report.odd.push(name.clone());
            }
        }
        report.entries.push(SwanEntry {
            f: name,
            degree: big_f.degree().unwrap_or(0),
            factors,
            separable,
            t_divides_f,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let rep = swan_demo(3, 5, 1).unwrap();
        assert_eq!(rep.total, 8);
        assert!(rep.holds());
        let one = rep.entries.iter().find(|e| e.f == "1").unwrap();
        assert_eq!((one.factors, one.degree), (2, 5));
        let t = rep.entries.iter().find(|e| e.f == "t").unwrap();
        assert_eq!(t.factors, 7);
        assert!(t.t_divides_f && !t.separable);
    }

    #[test]
    fn degree_two_all_reducible() {
        let rep = swan_demo(3, 5, 2).unwrap();
        assert_eq!(rep.total, 26);
        assert_eq!(rep.reducible, 26);
    }

    #[test]
    fn parameter_checks() {
        assert!(swan_demo(2, 3, 1).is_err());
        assert!(swan_demo(3, 4, 1).is_err());
        assert!(swan_demo(3, 3, 1).is_err());
        assert!(swan_demo(3, 13, 1).is_err());
        assert!(swan_demo(9, 5, 1).is_err());
    }
}
