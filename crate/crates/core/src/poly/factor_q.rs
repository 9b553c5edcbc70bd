//! Factorization in ℚ[X] and the canonical totally primitive factorization.
//!
//! Pipeline: square-free decomposition (Yun) over ℚ, then for each
//! square-free primitive part: factor modulo a good prime, Hensel-lift the
//! modular factors to `p^k` beyond the Mignotte bound, and recombine subsets
//! by trial division over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{gcd_values, repr_decompose, FieldPoly};
use crate::frac::Frac;
use crate::ring::{FpPoly, FpPolyRing, Integers, Pid};
use crate::Error;

#[derive(Clone, Debug)]
pub struct FactorConfig {
    pub degree_cap: usize,
    /// Number of good primes tried before picking the one with fewest
    /// modular factors.
    pub primes_tried: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            degree_cap: 12,
            primes_tried: 3,
        }
    }
}

/// `Q = A/(B*Γ) * prod(P_i^α_i)` with each `P_i` irreducible and totally
/// primitive, `A` coprime to `B`, and `Γ` the value gcd of the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveFactorization {
    pub a: BigInt,
    pub b: BigInt,
    pub gamma: BigInt,
    pub factors: Vec<(FieldPoly<BigInt>, u32)>,
}

impl PrimitiveFactorization {
    pub fn product(&self, ring: &Integers) -> FieldPoly<BigInt> {
        self.factors
            .iter()
            .fold(FieldPoly::one(ring), |acc, (p, e)| acc.mul(ring, &p.pow(ring, *e)))
    }

    /// `A/(BΓ) * prod(P_i^α_i)`.
    pub fn recompose(&self, ring: &Integers) -> FieldPoly<BigInt> {
        let k = Frac::new(ring, self.a.clone(), &self.b * &self.gamma);
        self.product(ring).scale(ring, &k)
    }
}

type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive integer polynomial with positive leading coefficient.
fn primitive_part(p: &[BigInt]) -> ZPoly {
    let mut c = content(p);
    if p.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

/// Exact quotient `a / b` over ℤ, if any.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    let lb = &b[db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn to_fp(fp: &FpPolyRing, p: &[BigInt]) -> FpPoly {
    let modulus = BigInt::from(fp.characteristic());
    fp.from_coeffs(p.iter().map(|c| c.mod_floor(&modulus).to_u64().unwrap()))
}

fn from_fp(p: &FpPoly) -> ZPoly {
    p.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce(p: &[BigInt], m: &BigInt) -> ZPoly {
    trim(p.iter().map(|c| c.mod_floor(m)).collect())
}

/// Lifts `f ≡ g*h (mod p)` to `f ≡ G*H (mod p^k)`, `g` monic, `g`, `h` coprime mod p.
fn hensel_pair(
    fp: &FpPolyRing,
    f: &[BigInt],
    g: &FpPoly,
    h: &FpPoly,
    k: u32,
) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.characteristic());
    let (one, s, t) = fp.xgcd(g, h);
    debug_assert!(fp.is_one(&one), "modular factors must be coprime");
    let mut big_g = from_fp(g);
    let mut big_h = from_fp(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let err = zsub(f, &zmul(&big_g, &big_h));
        let e: ZPoly = err.iter().map(|c| c / &pj).collect();
        let e = to_fp(fp, &e);
        let (q, dg) = fp.div_rem(&fp.mul(&t, &e), g);
        let dh = fp.add(&fp.mul(&s, &e), &fp.mul(&q, h));
        let scaled = |d: &FpPoly| -> ZPoly { from_fp(d).iter().map(|c| c * &pj).collect() };
        big_g = trim(add_z(&big_g, &scaled(&dg)));
        big_h = trim(add_z(&big_h, &scaled(&dh)));
        pj *= &p;
    }
    (reduce(&big_g, &pj), reduce(&big_h, &pj))
}

fn add_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

/// Lifts a full modular factorization `f ≡ lc * prod(g_i) (mod p)` to monic
/// factors modulo `p^k`.
fn hensel_multi(fp: &FpPolyRing, f: &[BigInt], gs: &[FpPoly], k: u32) -> Vec<ZPoly> {
    let pk = num_traits::pow(BigInt::from(fp.characteristic()), k as usize);
    let lc = f.last().unwrap().clone();
    let mut target = f.to_vec();
    let mut out = Vec::with_capacity(gs.len());
    for i in 0..gs.len() - 1 {
        let rest = gs[i + 1..]
            .iter()
            .fold(to_fp(fp, std::slice::from_ref(&lc)), |acc, g| fp.mul(&acc, g));
        let (big_g, big_h) = hensel_pair(fp, &target, &gs[i], &rest, k);
        out.push(big_g);
        target = big_h;
    }
    let inv = lc.extended_gcd(&pk).x.mod_floor(&pk);
    out.push(reduce(&target.iter().map(|c| c * &inv).collect::<Vec<_>>(), &pk));
    out
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1
    }
}

/// Irreducible factors over ℤ of a primitive square-free polynomial of
/// positive degree with positive leading coefficient.
fn factor_squarefree(f: &[BigInt], cfg: &FactorConfig) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    // Pick a prime keeping f square-free and of full degree, fewest factors.
    let mut best: Option<(FpPolyRing, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in crate::ring::Integers::default()
        .enumerate_primes(100_000)
        .primes
        .into_iter()
        .skip(1)
    {
        if tried >= cfg.primes_tried {
            break;
        }
        if lc.is_multiple_of(&p) {
            continue;
        }
        let fp = FpPolyRing::new(p.to_u64().unwrap()).expect("prime");
        let fbar = to_fp(&fp, f);
        if fp.gcd(&fbar, &fp.derivative(&fbar)).degree() != Some(0) {
            continue;
        }
        tried += 1;
        let factors: Vec<FpPoly> = fp
            .factor(&fbar)
            .expect("nonzero")
            .factors
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((fp, factors));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (fp, modular) = best.expect("some prime keeps f square-free");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let norm = isqrt_ceil(&f.iter().map(|c| c * c).sum::<BigInt>());
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let p = BigInt::from(fp.characteristic());
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let mut lifted = hensel_multi(&fp, f, &modular, k);
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), size) {
            let rlc = rest.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![rlc], |acc, &i| reduce(&zmul(&acc, &lifted[i]), &pk));
            let cand = primitive_part(&trim(prod.iter().map(|c| symmetric_mod(c, &pk)).collect()));
            if let Some(q) = zdiv_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                let mut idx = subset.clone();
                idx.sort_unstable_by(|a, b| b.cmp(a));
                for i in idx {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.len() > 1 {
        out.push(primitive_part(&rest));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Yun's square-free decomposition in ℚ[X]: monic factors with multiplicities.
fn squarefree_q(ring: &Integers, f: &FieldPoly<BigInt>) -> Vec<(FieldPoly<BigInt>, u32)> {
    let a = f.monic(ring);
    let b = a.derivative(ring);
    let c = a.gcd(ring, &b);
    let mut w = a.div_rem(ring, &c).0;
    let mut y = b.div_rem(ring, &c).0;
    let mut z = y.sub(ring, &w.derivative(ring));
    let mut out = Vec::new();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let g = w.gcd(ring, &z);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_rem(ring, &g).0;
        y = z.div_rem(ring, &g).0;
        z = y.sub(ring, &w.derivative(ring));
        i += 1;
    }
    out
}

/// Irreducible factorization over ℚ as primitive integer polynomials with
/// positive leading coefficients, plus the rational constant.
pub fn factor_integer_parts(
    ring: &Integers,
    q: &FieldPoly<BigInt>,
    cfg: &FactorConfig,
) -> Result<(Frac<BigInt>, Vec<(ZPoly, u32)>), Error> {
    let deg = q.degree().ok_or(Error::ZeroInput)?;
    if deg > cfg.degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree: deg,
            cap: cfg.degree_cap,
        });
    }
    let mut factors: Vec<(ZPoly, u32)> = Vec::new();
    for (sqf, mult) in squarefree_q(ring, q) {
        let (coeffs, _) = sqf.clear_denominators(ring);
        let prim = primitive_part(&coeffs);
        for g in factor_squarefree(&prim, cfg) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| (a.len(), a).cmp(&(b.len(), b)));
    let product = factors.iter().fold(FieldPoly::one(ring), |acc, (g, e)| {
        acc.mul(ring, &FieldPoly::from_ring_coeffs(ring, g.clone()).pow(ring, *e))
    });
    let unit = q.leading().unwrap().div(ring, product.leading().unwrap());
    Ok((unit, factors))
}

/// Canonical totally primitive factorization of a nonzero `Q ∈ ℚ[X]`.
pub fn factor_over_q(
    ring: &Integers,
    q: &FieldPoly<BigInt>,
    cfg: &FactorConfig,
) -> Result<PrimitiveFactorization, Error> {
    let (mut constant, parts) = factor_integer_parts(ring, q, cfg)?;
    let mut factors = Vec::with_capacity(parts.len());
    for (g, e) in parts {
        let d = repr_decompose(ring, &FieldPoly::from_ring_coeffs(ring, g))?;
        // g = (a/b) P, so g^e contributes (a/b)^e.
        constant = constant.mul(ring, &Frac::new(ring, d.a, d.b).pow(ring, e));
        factors.push((d.p, e));
    }
    let product = factors
        .iter()
        .fold(FieldPoly::one(ring), |acc, (p, e)| acc.mul(ring, &p.pow(ring, *e)));
    let gamma = gcd_values(ring, &product)?;
    let (a, b) = constant.mul_elem(ring, &gamma).into_parts();
    Ok(PrimitiveFactorization { a, b, gamma, factors })
}
