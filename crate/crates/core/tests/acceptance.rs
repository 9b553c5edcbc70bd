//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check below recomputes its expected values with plain `num-integer`
//! arithmetic (trial division, Miller–Rabin, direct gcds) rather than the
//! library's own routines.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use totprim::generator::{extract_subset, GeneratorConfig, GeneratorState, ProblemSpec, WitnessCertificate};
use totprim::oracle::{mutations, scan_primes, swan_demo, verify_certificate, verify_stream, int_range};
use totprim::poly::gcd_values;
use totprim::primitivity::{check_integer, obstruction_set, reduce_mod_xp_minus_x, ArithProgression};
use totprim::text::parse_poly;
use totprim::{FieldPoly, Integers, Localized, Pid};

type Outcome = Result<String, String>;

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

fn zp(s: &str) -> FieldPoly<BigInt> {
    parse_poly(&Integers::default(), s).unwrap()
}

fn eval_int(coeffs: &[i64], m: i64) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * m + c)
}

fn trial_primes(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = z(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn miller_rabin(n: &BigInt) -> bool {
    let n = n.abs();
    if n < z(2) {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n == z(p) {
            return true;
        }
        if (&n % p).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = &n - 1;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'base: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = z(a).modpow(&d, &n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&z(2), &n);
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn crit1() -> Outcome {
    let r = Integers::default();
    let p = zp("x^6+3x^5+x^2+x+21");
    let rep = check_integer(&r, &p, &ArithProgression::trivial(&r)).map_err(|e| e.to_string())?;
    let coeffs: Vec<BigInt> = p.ring_coeffs(&r).unwrap();
    let red = reduce_mod_xp_minus_x(&coeffs, 3);
    if !rep.is_totally_primitive || !rep.obstructions.is_empty() {
        return Err(format!("report {rep:?}"));
    }
    if red != vec![0, 1, 2] {
        return Err(format!("reduction mod 3 is {red:?}, want 2X^2+X"));
    }
    Ok("totally primitive, reduction mod X^3-X over F_3 is 2X^2+X".into())
}

fn crit2() -> Outcome {
    let r = Integers::default();
    let mut falling = FieldPoly::one(&r);
    let mut fact = BigInt::one();
    for k in 1..=6i64 {
        falling = falling.mul(&r, &zp(&format!("x-{}", k - 1)));
        fact *= k;
        let g = gcd_values(&r, &falling).map_err(|e| e.to_string())?;
        let brute = (0..=k + 2)
            .map(|m| (0..k).fold(BigInt::one(), |acc, j| acc * (m - j)))
            .fold(BigInt::zero(), |g, v| g.gcd(&v));
        if g != fact || brute != fact {
            return Err(format!("k = {k}: gcd_values {g}, brute {brute}, k! = {fact}"));
        }
    }
    Ok("gcd of values = k! for k = 1..6".into())
}

fn crit3() -> Outcome {
    let r = Integers::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = Vec::new();
    for case in 0..500 {
        let deg = rng.gen_range(0..=8usize);
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-50..=50)).collect();
        while coeffs[deg] == 0 {
            coeffs[deg] = rng.gen_range(-50..=50);
        }
        let p = FieldPoly::from_ring_coeffs(&r, coeffs.iter().map(|&c| z(c)).collect());
        let rep = obstruction_set(&r, &p, &ArithProgression::trivial(&r)).map_err(|e| e.to_string())?;
        let got: Vec<BigInt> = rep.primes().cloned().collect();
        let g = (0..=deg as i64).fold(BigInt::zero(), |g, m| g.gcd(&eval_int(&coeffs, m)));
        let want = trial_primes(&g);
        if got != want {
            mismatches.push(format!("#{case} {coeffs:?}: {got:?} vs {want:?}"));
        }
    }
    if mismatches.is_empty() {
        Ok("500 random polynomials, 0 mismatches".into())
    } else {
        Err(format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))
    }
}

fn stream_int(spec: ProblemSpec<BigInt>, count: usize) -> Result<Vec<WitnessCertificate<BigInt>>, String> {
    let r = Integers::default();
    let mut g = GeneratorState::new(r, spec, GeneratorConfig::default()).map_err(|e| e.to_string())?;
    g.take(count).map_err(|e| e.to_string())
}

fn independent_checks(polys: &[&str], certs: &[WitnessCertificate<BigInt>], gamma: &BigInt) -> Result<(), String> {
    let polys: Vec<Vec<i64>> = polys
        .iter()
        .map(|s| zp(s).ring_coeffs(&Integers::default()).unwrap().iter().map(|c| c.to_i64().unwrap()).collect())
        .collect();
    let eval = |c: &[i64], m: &BigInt| c.iter().rev().fold(BigInt::zero(), |acc, &k| acc * m + k);
    let mut products = Vec::new();
    for c in certs {
        let vals: Vec<BigInt> = polys.iter().map(|p| eval(p, &c.m)).collect();
        if vals != c.values {
            return Err(format!("values at m = {} differ", c.m));
        }
        let red: Vec<BigInt> = vals
            .iter()
            .map(|v| {
                if (v % gamma).is_zero() {
                    Ok(v / gamma)
                } else {
                    Err(format!("{v} not divisible by γ = {gamma}"))
                }
            })
            .collect::<Result<_, _>>()?;
        for a in 0..red.len() {
            for b in a + 1..red.len() {
                if !red[a].gcd(&red[b]).is_one() {
                    return Err(format!("cross gcd at m = {}", c.m));
                }
            }
        }
        if c.witnesses.len() != red.len() {
            return Err(format!("missing witnesses at m = {}", c.m));
        }
        for w in &c.witnesses {
            let p = w.prime.clone().ok_or("unit witness over Z")?;
            let v = &red[w.i];
            if !miller_rabin(&p) || !(v % &p).is_zero() || (v % (&p * &p)).is_zero() {
                return Err(format!("witness {p} fails on {v}"));
            }
        }
        products.push(red.iter().product::<BigInt>());
    }
    for a in 0..products.len() {
        for b in a + 1..products.len() {
            if !products[a].gcd(&products[b]).is_one() {
                return Err(format!("emissions {a} and {b} share a factor"));
            }
            if certs[a].m == certs[b].m {
                return Err(format!("emissions {a} and {b} repeat m"));
            }
        }
    }
    Ok(())
}

fn crit4() -> Outcome {
    let r = Integers::default();
    let names = ["x^2+1", "x^2+x+1"];
    let spec = ProblemSpec::full(&r, names.iter().map(|s| zp(s)).collect());
    let certs = stream_int(spec.clone(), 25)?;
    independent_checks(&names, &certs, &BigInt::one())?;
    let v = verify_stream(&r, &spec, &certs);
    if !v.ok() {
        return Err(v.violations.join("; "));
    }
    Ok("25 emissions, 300 pairwise gcds = 1, 50 witnesses of valuation 1".into())
}

fn crit5() -> Outcome {
    let r = Integers::default();
    let prog = ArithProgression::new(&r, z(1), z(2)).map_err(|e| e.to_string())?;
    let spec = ProblemSpec::full(&r, vec![zp("x^2+1")]).with_progression(prog);
    let mut g = GeneratorState::new(r.clone(), spec.clone(), GeneratorConfig::default()).map_err(|e| e.to_string())?;
    if g.gamma() != z(2) {
        return Err(format!("γ = {}", g.gamma()));
    }
    let certs = g.take(15).map_err(|e| e.to_string())?;
    if certs.iter().any(|c| c.m.is_even()) {
        return Err("even m emitted".into());
    }
    independent_checks(&["x^2+1"], &certs, &z(2))?;
    let v = verify_stream(&r, &spec, &certs);
    if !v.ok() {
        return Err(v.violations.join("; "));
    }
    Ok("γ = 2, 15 emissions with P(m)/2 pairwise coprime".into())
}

fn crit6() -> Outcome {
    let r = Localized::new(3).map_err(|e| e.to_string())?;
    let spec = ProblemSpec::full(&r, vec![parse_poly(&r, "x^2+1").unwrap()]);
    let mut g = GeneratorState::new(r.clone(), spec.clone(), GeneratorConfig::default()).map_err(|e| e.to_string())?;
    let certs = g.take(10).map_err(|e| e.to_string())?;
    for c in &certs {
        let v = &c.values[0];
        let three = z(3);
        let v3 = (v.numer() % &three).is_zero() || (v.denom() % &three).is_zero();
        if v3 || !c.witnesses.iter().all(|w| w.unit) {
            return Err(format!("value {} not flagged as a 3-adic unit", r.format_elem(v)));
        }
        if !verify_certificate(&r, &spec, c).ok() {
            return Err("verifier rejected a certificate".into());
        }
    }
    Ok("10 emissions over Z_(3), all values units with v_3 = 0".into())
}

fn crit7() -> Outcome {
    let rep = swan_demo(3, 5, 3).map_err(|e| e.to_string())?;
    if rep.total != 80 {
        return Err(format!("{} polynomials enumerated, want 3^4 - 1 = 80", rep.total));
    }
    if !rep.irreducible.is_empty() {
        return Err(format!("irreducible F for f in {:?}", rep.irreducible));
    }
    if !rep.odd.is_empty() {
        return Err(format!("odd factor count for f in {:?}", rep.odd));
    }
    Ok(format!(
        "{}/{} F reducible, {} separable with t ∤ f, all even",
        rep.reducible, rep.total, rep.parity_checked
    ))
}

fn crit8() -> Outcome {
    let r = Integers::default();
    let spec = ProblemSpec::full(&r, vec![zp("x^2+1"), zp("x^2+x+1")]);
    let certs = stream_int(spec.clone(), 20)?;
    let mut tried = 0;
    for c in &certs {
        if !verify_certificate(&r, &spec, c).ok() {
            return Err(format!("valid certificate #{} rejected", c.index));
        }
        for (label, bad) in mutations(&r, c) {
            tried += 1;
            if verify_certificate(&r, &spec, &bad).ok() {
                return Err(format!("tampered {label} of #{} accepted", c.index));
            }
        }
    }
    Ok(format!("20 certificates, {tried} mutations, 0 false accepts"))
}

fn crit9() -> Outcome {
    let r = Integers::default();
    let sample = int_range(1, 50);
    let ex = extract_subset(&r, &sample, &[zp("x")]).map_err(|e| e.to_string())?;
    let mut brute: Vec<i64> = Vec::new();
    for m in 1..=50i64 {
        if brute.iter().all(|&k| k.gcd(&m) == 1) {
            brute.push(m);
        }
    }
    let got: Vec<i64> = ex.kept.iter().map(|m| m.to_i64().unwrap()).collect();
    if got != brute {
        return Err(format!("kept {got:?}, brute {brute:?}"));
    }
    for (a, row) in ex.gcd_table.iter().enumerate() {
        for (b, g) in row.iter().enumerate() {
            let want = if a == b { z(got[a]) } else { BigInt::one() };
            if *g != want {
                return Err(format!("gcd table entry ({a}, {b}) = {g}"));
            }
        }
    }
    Ok(format!("{} elements kept, identity gcd pattern", got.len()))
}

fn crit10() -> Outcome {
    let r = Integers::default();
    let rep = scan_primes(&r, &zp("x^2+x+41"), &int_range(0, 39), "0..39", 4).map_err(|e| e.to_string())?;
    let brute = (0..=39i64)
        .map(|m| m * m + m + 41)
        .filter(|&v| (2..v).take_while(|d| d * d <= v).all(|d| v % d != 0))
        .count() as u64;
    if rep.primes != Some(40) || brute != 40 {
        return Err(format!("scanner {:?}, trial division {brute}", rep.primes));
    }
    Ok("40 prime values on 0..39".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("1 worked example", crit1, 1),
        ("2 falling factorials", crit2, 1),
        ("3 oracle equivalence", crit3, 30),
        ("4 coprime stream", crit4, 60),
        ("5 progression", crit5, 30),
        ("6 Z_(3) units", crit6, 5),
        ("7 Swan demo", crit7, 120),
        ("8 mutation matrix", crit8, 30),
        ("9 extraction", crit9, 5),
        ("10 Euler polynomial", crit10, 1),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(limit);
        match outcome {
            Ok(msg) => println!(
                "PASS criterion {name}: {msg} ({:.2}s{})",
                took.as_secs_f64(),
                if slow { format!(", over the {limit}s target") } else { String::new() }
            ),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({:.2}s)", took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
