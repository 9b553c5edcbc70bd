use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::poly::{gcd_values, is_integrally_valued, FieldPoly};
use crate::ring::{FpPoly, FpPolyRing, Integers, Pid};
use crate::Error;

/// Counts over a finite range. Densities are reduced fractions `k/n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub range: String,
    pub poly: String,
    pub total: u64,
    pub evaluated: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squarefree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<u64>,
    pub units: u64,
    pub zeros: u64,
    /// Arguments whose value could not be factored within the effort cap.
    pub failed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squarefree_density: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_density: Option<String>,
}

/// `lo..=hi` as integers.
pub fn int_range(lo: i64, hi: i64) -> Vec<BigInt> {
    (lo..=hi).map(BigInt::from).collect()
}

/// Every polynomial of degree at most `d`, zero included.
pub fn fpt_up_to(ring: &FpPolyRing, d: u32) -> Vec<FpPoly> {
    let count = ring.characteristic().pow(d + 1);
    (0..count).map(|i| ring.candidate(i)).collect()
}

fn density(k: u64, n: u64) -> String {
    if n == 0 {
        return "0/0".into();
    }
    let g = k.gcd(&n).max(1);
    format!("{}/{}", k / g, n / g)
}

enum Class {
    Zero,
    Unit,
    Value { squarefree: bool, prime: bool },
    Failed,
}

fn classify<R: Pid>(ring: &R, p: &FieldPoly<R::Elem>, m: &R::Elem, primes: bool) -> Result<Class, Error> {
    let v = p.eval_in_ring(ring, m)?;
    if ring.is_zero(&v) {
        return Ok(Class::Zero);
    }
    if ring.is_unit(&v) {
        return Ok(Class::Unit);
    }
    if primes {
        return Ok(match ring.is_prime(&v) {
            Ok(prime) => Class::Value { squarefree: prime, prime },
            Err(_) => Class::Failed,
        });
    }
    Ok(match ring.factor(&v) {
        Ok(f) => Class::Value {
            squarefree: f.factors.iter().all(|(_, e)| *e == 1),
            prime: f.factors.len() == 1 && f.factors[0].1 == 1,
        },
        Err(Error::FactorizationIncomplete(_)) => Class::Failed,
        Err(e) => return Err(e),
    })
}

fn run<R: Pid>(
    ring: &R,
    p: &FieldPoly<R::Elem>,
    range: &[R::Elem],
    label: &str,
    jobs: usize,
    primes: bool,
) -> Result<ScanReport, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let classes: Vec<Result<Class, Error>> =
        pool.install(|| range.par_iter().map(|m| classify(ring, p, m, primes)).collect());
    let mut report = ScanReport {
        range: label.to_string(),
        poly: p.format(ring),
        total: range.len() as u64,
        evaluated: 0,
        squarefree: None,
        primes: None,
        units: 0,
        zeros: 0,
        failed: Vec::new(),
        squarefree_density: None,
        prime_density: None,
    };
    let (mut sf, mut pr) = (0, 0);
    for (m, c) in range.iter().zip(classes) {
        match c? {
            Class::Zero => report.zeros += 1,
            Class::Unit => {
                report.units += 1;
                sf += 1;
            }
            Class::Value { squarefree, prime } => {
                sf += squarefree as u64;
                pr += prime as u64;
            }
            Class::Failed => {
                report.failed.push(ring.format_elem(m));
                continue;
            }
        }
        report.evaluated += 1;
    }
    if primes {
        report.primes = Some(pr);
        report.prime_density = Some(density(pr, report.evaluated));
    } else {
        report.squarefree = Some(sf);
        report.squarefree_density = Some(density(sf, report.evaluated));
        report.primes = Some(pr);
        report.prime_density = Some(density(pr, report.evaluated));
    }
    Ok(report)
}

/// Counts square-free values; `0` is not square-free and units are.
pub fn scan_squarefree<R: Pid>(
    ring: &R,
    p: &FieldPoly<R::Elem>,
    range: &[R::Elem],
    label: &str,
    jobs: usize,
) -> Result<ScanReport, Error> {
    if !is_integrally_valued(ring, p)? {
        return Err(Error::NotIntegrallyValued(p.format(ring)));
    }
    run(ring, p, range, label, jobs, false)
}

/// Counts values `v` with `|v|` prime.
pub fn scan_primes(
    ring: &Integers,
    p: &FieldPoly<BigInt>,
    range: &[BigInt],
    label: &str,
    jobs: usize,
) -> Result<ScanReport, Error> {
    if !is_integrally_valued(ring, p)? {
        return Err(Error::NotIntegrallyValued(p.format(ring)));
    }
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::Precondition("P is constant".into()));
    }
    let g = gcd_values(ring, p)?;
    if !ring.is_unit(&g) {
        return Err(Error::NotTotallyPrimitive { gcd: ring.format_elem(&g) });
    }
    if p.leading().map(|c| c.numer().sign()) != Some(num_bigint::Sign::Plus) {
        return Err(Error::Precondition("leading coefficient is not positive".into()));
    }
    run(ring, p, range, label, jobs, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn zp(s: &str) -> FieldPoly<BigInt> {
        parse_poly(&Integers::default(), s).unwrap()
    }

    fn sieve_squarefree(n: u64) -> u64 {
        (1..=n).filter(|&m| (2..=m).take_while(|d| d * d <= m).all(|d| m % (d * d) != 0)).count() as u64
    }

    #[test]
    fn squarefree_examples() {
        let r = Integers::default();
        let rep = scan_squarefree(&r, &zp("x"), &int_range(1, 100), "1..100", 2).unwrap();
        assert_eq!(rep.squarefree, Some(61));
        assert_eq!(rep.squarefree, Some(sieve_squarefree(100)));
        assert_eq!(rep.squarefree_density.as_deref(), Some("61/100"));
        let rep = scan_squarefree(&r, &zp("x^2"), &int_range(2, 40), "2..40", 1).unwrap();
        assert_eq!(rep.squarefree, Some(0));
        let rep = scan_squarefree(&r, &zp("x"), &int_range(0, 0), "0..0", 1).unwrap();
        assert_eq!((rep.zeros, rep.squarefree), (1, Some(0)));
    }

    #[test]
    fn squarefree_x2_plus_1_matches_trial_division() {
        let r = Integers::default();
        let expected = (1..=100u64)
            .filter(|m| {
                let v = m * m + 1;
                (2..).take_while(|d| d * d <= v).all(|d| v % (d * d) != 0)
            })
            .count() as u64;
        let rep = scan_squarefree(&r, &zp("x^2+1"), &int_range(1, 100), "1..100", 3).unwrap();
        assert_eq!(rep.squarefree, Some(expected));
    }

    #[test]
    fn prime_examples() {
        let r = Integers::default();
        let rep = scan_primes(&r, &zp("x"), &int_range(1, 20), "1..20", 1).unwrap();
        assert_eq!(rep.primes, Some(8));
        let rep = scan_primes(&r, &zp("x^2+x+41"), &int_range(0, 39), "0..39", 4).unwrap();
        assert_eq!(rep.primes, Some(40));
        assert!(matches!(
            scan_primes(&r, &zp("x*(x+1)"), &int_range(1, 5), "", 1),
            Err(Error::NotTotallyPrimitive { .. })
        ));
        assert!(matches!(
            scan_primes(&r, &zp("-x^2-1"), &int_range(1, 5), "", 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn independent_of_jobs() {
        let r = Integers::default();
        let range = int_range(-200, 200);
        let a = scan_squarefree(&r, &zp("x^3+2"), &range, "", 1).unwrap();
        let b = scan_squarefree(&r, &zp("x^3+2"), &range, "", 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fpt_range() {
        let f = FpPolyRing::new(2).unwrap();
        let range = fpt_up_to(&f, 3);
        assert_eq!(range.len(), 16);
        let p = parse_poly(&f, "x").unwrap();
        let rep = scan_squarefree(&f, &p, &range, "deg<=3", 2).unwrap();
        let brute = range
            .iter()
            .filter(|g| !f.is_zero(g))
            .filter(|g| f.gcd(g, &f.derivative(g)).degree() == Some(0))
            .count() as u64;
        assert_eq!(rep.squarefree, Some(brute));
    }
}
