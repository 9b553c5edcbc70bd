//! The polynomial ring 𝔽_p[t].
//!
//! Factorization follows the classical pipeline: square-free decomposition,
//! distinct-degree factorization, then Cantor–Zassenhaus equal-degree
//! splitting driven by a seeded ChaCha stream so runs are reproducible.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Factored, Pid, PrimeEnumeration};
use crate::Error;

/// Element of 𝔽_p[t]: ascending coefficients in `0..p`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FpPoly {
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }
}

/// 𝔽_p[t] for a prime `p < 2^32`.
#[derive(Clone, Debug)]
pub struct FpPolyRing {
    p: u64,
    seed: u64,
}

pub(crate) const DEFAULT_SEED: u64 = 0x5eed_f00d;

impl FpPolyRing {
    pub fn new(p: u64) -> Result<Self, Error> {
        Self::with_seed(p, DEFAULT_SEED)
    }

    /// `seed` drives equal-degree splitting; results do not depend on it,
    /// only the work done does.
    pub fn with_seed(p: u64, seed: u64) -> Result<Self, Error> {
        if p >= 1 << 32 || !super::is_probable_prime(&p.into()) {
            return Err(Error::InvalidParameter(format!(
                "characteristic {p} must be a prime below 2^32"
            )));
        }
        Ok(FpPolyRing { p, seed })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn from_coeffs(&self, coeffs: impl IntoIterator<Item = u64>) -> FpPoly {
        FpPoly {
            coeffs: coeffs.into_iter().map(|c| c % self.p).collect(),
        }
        .trim()
    }

    pub fn constant(&self, c: u64) -> FpPoly {
        self.from_coeffs([c])
    }

    /// The variable `t`.
    pub fn t(&self) -> FpPoly {
        self.from_coeffs([0, 1])
    }

    /// `c * t^k`.
    pub fn monomial(&self, c: u64, k: usize) -> FpPoly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        self.from_coeffs(v)
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_p");
        self.pow_scalar(a, self.p - 2)
    }

    fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, a);
            }
            a = self.mulmod(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, a: &FpPoly, c: u64) -> FpPoly {
        self.from_coeffs(a.coeffs.iter().map(|&x| self.mulmod(x, c)))
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        if a.coeffs.is_empty() {
            return a.clone();
        }
        self.scale(a, self.inv(a.leading()))
    }

    pub fn derivative(&self, a: &FpPoly) -> FpPoly {
        self.from_coeffs(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mulmod(c, i as u64 % self.p)),
        )
    }

    pub fn eval(&self, a: &FpPoly, x: u64) -> u64 {
        a.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (self.mulmod(acc, x) + c) % self.p)
    }

    /// `base^e mod m`.
    pub fn pow_mod(&self, base: &FpPoly, e: &BigInt, m: &FpPoly) -> FpPoly {
        let mut result = self.rem(&self.one(), m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.rem(&self.mul(&result, &result), m);
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
        }
        result
    }

    /// `a^(1/p)` for `a` with `a' = 0` (all exponents divisible by p).
    fn pth_root(&self, a: &FpPoly) -> FpPoly {
        // Frobenius is the identity on F_p, so only exponents shrink.
        let p = self.p as usize;
        self.from_coeffs(a.coeffs.iter().step_by(p).copied())
    }

    /// Square-free decomposition: monic `a` = prod(f_i^i) with f_i square-free
    /// and pairwise coprime. Returns (f_i, i) with nonconstant f_i.
    pub fn squarefree_decomposition(&self, a: &FpPoly) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        self.sqf_rec(&self.monic(a), 1, &mut out);
        out.sort_by_key(|(_, e)| *e);
        out
    }

    fn sqf_rec(&self, f: &FpPoly, mult: u32, out: &mut Vec<(FpPoly, u32)>) {
        if f.degree().unwrap_or(0) == 0 {
            return;
        }
        let d = self.derivative(f);
        if d.coeffs.is_empty() {
            let r = self.pth_root(f);
            self.sqf_rec(&r, mult * self.p as u32, out);
            return;
        }
        let mut c = self.gcd(f, &d);
        let mut w = self.exact_div(f, &c).unwrap();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = self.gcd(&w, &c);
            let z = self.exact_div(&w, &y).unwrap();
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i * mult));
            }
            w = y;
            c = self.exact_div(&c, &w).unwrap();
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            let r = self.pth_root(&c);
            self.sqf_rec(&r, mult * self.p as u32, out);
        }
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs (product of all irreducible factors of degree d, d).
    pub fn distinct_degree(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = self.t();
        let p = BigInt::from(self.p);
        let mut h = self.rem(&x, &rest);
        let mut d = 0;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = self.pow_mod(&h, &p, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.degree().unwrap_or(0) > 0 {
                rest = self.exact_div(&rest, &g).unwrap();
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        if let Some(deg) = rest.degree() {
            if deg > 0 {
                out.push((rest, deg));
            }
        }
        out
    }

    /// Splits a monic product of distinct irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = f.degree().unwrap_or(0);
        if n == d {
            return vec![f.clone()];
        }
        loop {
            let deg = rng.gen_range(1..n);
            let a = self.from_coeffs((0..=deg).map(|_| rng.gen_range(0..self.p)));
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let candidate = if self.p == 2 {
                // Trace map a + a^2 + ... + a^(2^(d-1)) mod f.
                let mut acc = a.clone();
                let mut cur = a.clone();
                for _ in 1..d {
                    cur = self.rem(&self.mul(&cur, &cur), f);
                    acc = self.add(&acc, &cur);
                }
                acc
            } else {
                let e = (BigInt::from(self.p).pow(d as u32) - 1) / 2;
                self.sub(&self.pow_mod(&a, &e, f), &self.one())
            };
            let g = self.gcd(&candidate, f);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.exact_div(f, &g).unwrap();
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Rabin-style irreducibility test via distinct-degree factorization.
    pub fn is_irreducible(&self, f: &FpPoly) -> bool {
        let Some(n) = f.degree() else { return false };
        if n == 0 {
            return false;
        }
        let m = self.monic(f);
        if self.gcd(&m, &self.derivative(&m)).degree() != Some(0) {
            return false;
        }
        let ddf = self.distinct_degree(&m);
        ddf.len() == 1 && ddf[0].1 == n
    }

    fn rng(&self, f: &FpPoly) -> ChaCha8Rng {
        // Mix the input into the seed so factoring does not depend on call order.
        let mut h = self.seed ^ self.p.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        for &c in &f.coeffs {
            h = h.rotate_left(7) ^ c.wrapping_mul(0xff51_afd7_ed55_8ccd);
        }
        ChaCha8Rng::seed_from_u64(h)
    }
}

impl Pid for FpPolyRing {
    type Elem = FpPoly;

    fn tag(&self) -> String {
        format!("fpt:{}", self.p)
    }

    fn zero(&self) -> FpPoly {
        FpPoly::default()
    }

    fn one(&self) -> FpPoly {
        self.constant(1)
    }

    fn from_i64(&self, n: i64) -> FpPoly {
        self.constant(n.rem_euclid(self.p as i64) as u64)
    }

    fn from_bigint(&self, n: &BigInt) -> FpPoly {
        self.constant(n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap())
    }

    fn atom(&self, name: &str) -> Option<FpPoly> {
        (name == "t").then(|| self.t())
    }

    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        self.from_coeffs((0..n).map(|i| {
            a.coeffs.get(i).copied().unwrap_or(0) + b.coeffs.get(i).copied().unwrap_or(0)
        }))
    }

    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let mut out = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulmod(x, y)) % self.p;
            }
        }
        self.from_coeffs(out)
    }

    fn neg(&self, a: &FpPoly) -> FpPoly {
        self.from_coeffs(a.coeffs.iter().map(|&c| (self.p - c) % self.p))
    }

    fn is_zero(&self, a: &FpPoly) -> bool {
        a.coeffs.is_empty()
    }

    fn div_rem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = self.inv(b.leading());
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mulmod(r[i + db], inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let t = self.mulmod(c, bc);
                r[i + j] = (r[i + j] + self.p - t) % self.p;
            }
        }
        r.truncate(db);
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    fn is_unit(&self, a: &FpPoly) -> bool {
        a.degree() == Some(0)
    }

    fn normal_form(&self, a: &FpPoly) -> (FpPoly, FpPoly) {
        if a.coeffs.is_empty() {
            return (self.one(), self.zero());
        }
        (self.constant(a.leading()), self.monic(a))
    }

    fn unit_inverse(&self, u: &FpPoly) -> FpPoly {
        assert!(self.is_unit(u), "not a unit");
        self.constant(self.inv(u.leading()))
    }

    fn factor(&self, a: &FpPoly) -> Result<Factored<FpPoly>, Error> {
        if a.coeffs.is_empty() {
            return Err(Error::ZeroInput);
        }
        let unit = self.constant(a.leading());
        let mut factors: Vec<(FpPoly, u32)> = Vec::new();
        let mut rng = self.rng(a);
        for (sqf, mult) in self.squarefree_decomposition(a) {
            for (part, d) in self.distinct_degree(&sqf) {
                for g in self.equal_degree(&part, d, &mut rng) {
                    match factors.iter_mut().find(|(q, _)| *q == g) {
                        Some(slot) => slot.1 += mult,
                        None => factors.push((g, mult)),
                    }
                }
            }
        }
        factors.sort_by(|x, y| {
            (x.0.degree(), x.0.coeffs.iter().rev().collect::<Vec<_>>())
                .cmp(&(y.0.degree(), y.0.coeffs.iter().rev().collect::<Vec<_>>()))
        });
        Ok(Factored { unit, factors })
    }

    fn is_prime(&self, a: &FpPoly) -> Result<bool, Error> {
        Ok(self.is_irreducible(a))
    }

    fn spec_finite(&self) -> bool {
        false
    }

    fn enumerate_primes(&self, bound: u64) -> PrimeEnumeration<FpPoly> {
        let mut primes = Vec::new();
        for d in 1..=bound as usize {
            let count = self.p.pow(d as u32);
            for low in 0..count {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut x = low;
                for _ in 0..d {
                    coeffs.push(x % self.p);
                    x /= self.p;
                }
                coeffs.push(1);
                let f = self.from_coeffs(coeffs);
                if self.is_irreducible(&f) {
                    primes.push(f);
                }
            }
        }
        PrimeEnumeration {
            primes,
            spec_finite: false,
        }
    }

    /// Base-p digits of `index` as ascending coefficients.
    fn candidate(&self, index: u64) -> FpPoly {
        let mut coeffs = Vec::new();
        let mut x = index;
        while x > 0 {
            coeffs.push(x % self.p);
            x /= self.p;
        }
        self.from_coeffs(coeffs)
    }

    fn residue_system(&self, modulus: &FpPoly, cap: u64) -> Option<Vec<FpPoly>> {
        let d = modulus.degree()? as u32;
        let count = self.p.checked_pow(d)?;
        (count <= cap).then(|| (0..count).map(|i| self.candidate(i)).collect())
    }

    fn format_elem(&self, a: &FpPoly) -> String {
        if a.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, &c) in a.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            match (k, c) {
                (0, _) => write!(s, "{c}").unwrap(),
                (1, 1) => s.push('t'),
                (1, _) => write!(s, "{c}*t").unwrap(),
                (_, 1) => write!(s, "t^{k}").unwrap(),
                _ => write!(s, "{c}*t^{k}").unwrap(),
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> FpPolyRing {
        FpPolyRing::new(p).unwrap()
    }

    fn has_root(r: &FpPolyRing, f: &FpPoly) -> bool {
        (0..r.characteristic()).any(|x| r.eval(f, x) == 0)
    }

    #[test]
    fn gcd_over_f2() {
        let r = ring(2);
        let a = r.parse_elem("t^2+1").unwrap();
        let b = r.parse_elem("t+1").unwrap();
        assert_eq!(r.gcd(&a, &b), b);
    }

    #[test]
    fn xgcd_over_f3() {
        let r = ring(3);
        let t = r.t();
        let t1 = r.parse_elem("t+1").unwrap();
        let (g, u, v) = r.xgcd(&t, &t1);
        assert_eq!(g, r.one());
        assert_eq!(u, r.from_i64(-1));
        assert_eq!(v, r.one());
    }

    #[test]
    fn units() {
        let r = ring(3);
        assert!(r.is_unit(&r.from_i64(2)));
        assert!(!r.is_unit(&r.t()));
        assert!(!r.is_unit(&r.zero()));
    }

    #[test]
    fn t5_plus_1_over_f3() {
        let r = ring(3);
        let f = r.parse_elem("t^5+1").unwrap();
        let fac = r.factor(&f).unwrap();
        let linear = r.parse_elem("t+1").unwrap();
        let quartic = r.parse_elem("t^4-t^3+t^2-t+1").unwrap();
        assert_eq!(fac.unit, r.one());
        assert_eq!(fac.factors, vec![(linear, 1), (quartic.clone(), 1)]);
        // Exhaustive oracle: no roots, and no monic quadratic divides it.
        assert!(!has_root(&r, &quartic));
        for a in 0..3 {
            for b in 0..3 {
                let q = r.from_coeffs([b, a, 1]);
                assert!(!r.divides(&q, &quartic));
            }
        }
    }

    #[test]
    fn primes_of_degree_at_most_two_over_f2() {
        let r = ring(2);
        let e = r.enumerate_primes(2);
        let expected: Vec<_> = ["t", "t+1", "t^2+t+1"]
            .iter()
            .map(|s| r.parse_elem(s).unwrap())
            .collect();
        assert_eq!(e.primes, expected);
    }

    #[test]
    fn irreducible_counts_match_gauss_formula() {
        // Number of monic irreducibles of degree n over F_q: (1/n) sum mu(d) q^(n/d).
        for (p, n, count) in [(2u64, 4usize, 3usize), (3, 3, 8), (5, 2, 10), (2, 6, 9)] {
            let r = ring(p);
            let e = r.enumerate_primes(n as u64);
            assert_eq!(e.primes.iter().filter(|f| f.degree() == Some(n)).count(), count);
        }
    }

    #[test]
    fn squarefree_handles_pth_powers() {
        let r = ring(3);
        // (t+1)^3 (t^2+1)^2 t
        let f = r.mul(
            &r.pow(&r.parse_elem("t+1").unwrap(), 3),
            &r.mul(&r.pow(&r.parse_elem("t^2+1").unwrap(), 2), &r.t()),
        );
        let fac = r.factor(&f).unwrap();
        assert_eq!(r.recompose(&fac), f);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, e)| *e).collect();
        assert_eq!(mults, vec![1, 3, 2]);
    }

    #[test]
    fn candidates_enumerate_by_degree() {
        let r = ring(2);
        let c: Vec<String> = (0..6).map(|i| r.format_elem(&r.candidate(i))).collect();
        assert_eq!(c, vec!["0", "1", "t", "t+1", "t^2", "t^2+1"]);
    }
}
