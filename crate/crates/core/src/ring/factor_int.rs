//! Integer factorization: trial division, strong probable-prime testing and
//! Pollard–Brent splitting under an explicit effort budget.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Error;

/// Effort caps for integer factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFactorConfig {
    /// Trial division covers every prime below this bound.
    pub trial_bound: u64,
    /// Total Pollard–Brent iterations allowed per input before giving up.
    pub rho_iterations: u64,
}

impl Default for IntFactorConfig {
    fn default() -> Self {
        IntFactorConfig {
            trial_bound: 1_000_000,
            rho_iterations: 20_000_000,
        }
    }
}

const SIEVE_LIMIT: u64 = 1_000_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(SIEVE_LIMIT))
}

pub(crate) fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes `<= bound`, served from the shared table when possible.
pub(crate) fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound <= SIEVE_LIMIT {
        let table = small_primes();
        let end = table.partition_point(|&p| p <= bound);
        table[..end].to_vec()
    } else {
        sieve(bound)
    }
}

// Bases 2..41 make Miller–Rabin deterministic below 3.3e24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn miller_rabin(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n);
    let mut n = n;
    let mut result = 1;
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == BigInt::from(5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let nn = BigInt::from(n.clone());
    // Perfect squares have no D with (D/n) = -1.
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == -1 {
            break;
        }
        if j == 0 && d.magnitude() != n {
            return false;
        }
        d = if d.sign() == Sign::Minus {
            -d + 2i32
        } else {
            -(d + 2i32)
        };
    }
    let p = BigInt::one();
    let q = (BigInt::one() - &d) / 4;
    let n_plus_1: BigInt = &nn + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;
    let m = |x: BigInt| x.mod_floor(&nn);
    let inv2: BigInt = (&nn + 1u32) / 2u32;
    // Binary ladder computing U_k, V_k, Q^k mod n.
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    for bit in (0..k.bits()).rev() {
        // Double.
        u = m(&u * &v);
        v = m(&v * &v - &qk * 2);
        qk = m(&qk * &qk);
        if k.bit(bit) {
            let u2 = m((&p * &u + &v) * &inv2);
            let v2 = m((&d * &u + &p * &v) * &inv2);
            u = u2;
            v = v2;
            qk = m(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = m(&v * &v - &qk * 2);
        qk = m(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality test for nonnegative integers. Deterministic below 3.3e24
/// (Miller–Rabin with the first thirteen prime bases); above that the
/// Miller–Rabin rounds are combined with a strong Lucas test (Baillie–PSW).
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        if small <= SIEVE_LIMIT {
            return small_primes().binary_search(&small).is_ok();
        }
    }
    for &p in &small_primes()[..50] {
        if (n % p).is_zero() {
            return false;
        }
    }
    for b in MR_BASES {
        if !miller_rabin(n, &BigUint::from(b)) {
            return false;
        }
    }
    let bound: BigUint = "3317044064679887385961981".parse().unwrap();
    if *n < bound {
        return true;
    }
    strong_lucas(n)
}

/// Pollard–Brent: returns a nontrivial factor of composite odd `n`, spending
/// at most `budget` iterations (decremented in place).
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                if *budget < steps {
                    return None;
                }
                *budget -= steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        // Cycle collapsed onto n itself; retry with the next constant.
    }
    None
}

/// Full factorization of `n >= 1` as (prime, exponent) pairs in ascending order.
pub(crate) fn factor_biguint(
    n: &BigUint,
    cfg: &IntFactorConfig,
) -> Result<Vec<(BigUint, u32)>, Error> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    let trial = cfg.trial_bound.min(SIEVE_LIMIT);
    for &p in small_primes() {
        if p >= trial {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if rest.is_one() {
        return Ok(out);
    }
    let mut budget = cfg.rho_iterations;
    let mut stack = vec![rest];
    let mut large: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            large.push(m);
            continue;
        }
        // Trial division may have stopped early because p^2 > rest; any leftover
        // small factors are caught here.
        if let Some(p) = small_primes()
            .iter()
            .take_while(|&&p| p < 1000)
            .find(|&&p| (&m % p).is_zero())
        {
            let pb = BigUint::from(*p);
            stack.push(&m / &pb);
            stack.push(pb);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        match pollard_brent(&m, &mut budget) {
            Some(d) => {
                let e = &m / &d;
                stack.push(d);
                stack.push(e);
            }
            None => {
                return Err(Error::FactorizationIncomplete(n.to_string()));
            }
        }
    }
    for p in large {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in (0u64..5000).chain(999_900..1_000_200) {
            assert_eq!(is_probable_prime(&BigUint::from(n)), naive_is_prime(n), "{n}");
        }
    }

    #[test]
    fn known_large_primes_and_pseudoprimes() {
        let m61 = (BigUint::one() << 61) - 1u32;
        assert!(is_probable_prime(&m61));
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_probable_prime(&m127));
        // Strong pseudoprime to bases 2..37 (Sorenson–Webster) is rejected by base 41.
        let psp: BigUint = "3825123056546413051".parse().unwrap();
        assert!(!is_probable_prime(&psp));
        // Carmichael number.
        assert!(!is_probable_prime(&BigUint::from(561u32)));
        assert!(!is_probable_prime(&(&m61 * &m61)));
    }

    #[test]
    fn lucas_accepts_primes_rejects_composites() {
        for p in [1_000_003u64, 1_000_033, 2_147_483_647] {
            assert!(strong_lucas(&BigUint::from(p)));
        }
        for c in [1_000_001u64, 1_000_003 * 1_000_033] {
            assert!(!strong_lucas(&BigUint::from(c)));
        }
    }

    #[test]
    fn factors_semiprime_beyond_trial_bound() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = &p * &q * &p;
        let f = factor_biguint(&n, &IntFactorConfig::default()).unwrap();
        assert_eq!(f, vec![(q, 1), (p, 2)]);
    }

    #[test]
    fn reports_incomplete_under_tiny_budget() {
        let p: BigUint = "1000000000039".parse().unwrap();
        let q: BigUint = "1000000000061".parse().unwrap();
        let cfg = IntFactorConfig {
            trial_bound: 100,
            rho_iterations: 10,
        };
        assert!(matches!(
            factor_biguint(&(&p * &q), &cfg),
            Err(Error::FactorizationIncomplete(_))
        ));
    }
}
