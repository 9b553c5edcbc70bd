//! Re-checks generator certificates with a separate Euclid loop and
//! valuation-by-division, never trusting the generator's own gcds.

use crate::generator::{ProblemSpec, SignConstraint, WitnessCertificate};
use crate::primitivity::ArithProgression;
use crate::ring::Pid;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub violations: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Normalized gcd by the plain remainder sequence.
pub fn euclid_gcd<R: Pid>(ring: &R, a: &R::Elem, b: &R::Elem) -> R::Elem {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !ring.is_zero(&y) {
        let (_, r) = ring.div_rem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    ring.normal_form(&x).1
}

/// `v_p(a)` by repeated division; `None` for `a = 0`.
pub fn valuation_by_division<R: Pid>(ring: &R, p: &R::Elem, a: &R::Elem) -> Option<u32> {
    if ring.is_zero(a) || ring.is_unit(p) || ring.is_zero(p) {
        return None;
    }
    let mut v = 0;
    let mut x = a.clone();
    loop {
        let (q, r) = ring.div_rem(&x, p);
        if !ring.is_zero(&r) {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

fn unit_gcd<R: Pid>(ring: &R, a: &R::Elem, b: &R::Elem) -> bool {
    ring.is_unit(&euclid_gcd(ring, a, b))
}

/// Recomputes every attestation of `cert` from `spec` alone.
pub fn verify_certificate<R: Pid>(
    ring: &R,
    spec: &ProblemSpec<R::Elem>,
    cert: &WitnessCertificate<R::Elem>,
) -> Verification {
    let mut bad = Vec::new();
    let n = spec.polys.len();
    let f = |e: &R::Elem| ring.format_elem(e);
    if cert.values.len() != n || cert.reduced.len() != n || cert.gammas.len() != n {
        return Verification {
            violations: vec!["shape: wrong number of values".into()],
        };
    }
    let prog = spec
        .progression
        .clone()
        .unwrap_or_else(|| ArithProgression::trivial(ring));
    if prog.term(ring, &cert.param) != cert.m {
        bad.push(format!("progression: m = {} is not a + b*{}", f(&cert.m), f(&cert.param)));
    }
    if cert.index != cert.history.len() {
        bad.push(format!("index: {} but {} earlier emissions", cert.index, cert.history.len()));
    }
    if let Some(sign) = spec.sign {
        let want = match sign {
            SignConstraint::Positive => std::cmp::Ordering::Greater,
            SignConstraint::Negative => std::cmp::Ordering::Less,
        };
        if ring.sign(&cert.m) != Some(want) {
            bad.push(format!("sign: m = {}", f(&cert.m)));
        }
    }
    for (i, p) in spec.polys.iter().enumerate() {
        match p.eval_in_ring(ring, &cert.m) {
            Ok(v) if v == cert.values[i] => {}
            Ok(v) => bad.push(format!("value: P{}(m) = {}, certificate says {}", i + 1, f(&v), f(&cert.values[i]))),
            Err(e) => bad.push(format!("value: P{}(m): {e}", i + 1)),
        }
        if ring.mul(&cert.gammas[i], &cert.reduced[i]) != cert.values[i] {
            bad.push(format!("reduced: gamma * reduced != P{}(m)", i + 1));
        }
        if ring.is_zero(&cert.reduced[i]) {
            bad.push(format!("value: P{}(m) = 0", i + 1));
        }
    }
    let product = cert.reduced.iter().fold(ring.one(), |acc, v| ring.mul(&acc, v));

    for (x, &i) in spec.e.iter().enumerate() {
        for &j in &spec.e[x + 1..] {
            let (i, j) = (i.min(j), i.max(j));
            let g = euclid_gcd(ring, &cert.reduced[i], &cert.reduced[j]);
            if !ring.is_unit(&g) {
                bad.push(format!("cross: gcd(P{}(m), P{}(m)) = {}", i + 1, j + 1, f(&g)));
            }
            if cert.reduced[i] == cert.reduced[j] {
                bad.push(format!("distinct: P{}(m) = P{}(m)", i + 1, j + 1));
            }
            match cert.cross.iter().find(|c| c.i == i && c.j == j) {
                Some(c) if c.gcd == g => {}
                Some(c) => bad.push(format!("cross: attested gcd {} != {}", f(&c.gcd), f(&g))),
                None => bad.push(format!("cross: missing attestation for ({}, {})", i + 1, j + 1)),
            }
        }
    }
    if cert.cross.len() != spec.e.len() * spec.e.len().saturating_sub(1) / 2 {
        bad.push("cross: unexpected attestations".into());
    }

    if cert.witnesses.len() != spec.i.len() {
        bad.push("witness: wrong number of witnesses".into());
    }
    for &i in &spec.i {
        let Some(w) = cert.witnesses.iter().find(|w| w.i == i) else {
            bad.push(format!("witness: none for P{}", i + 1));
            continue;
        };
        let v = &cert.reduced[i];
        match (&w.prime, w.unit) {
            (None, true) => {
                if !ring.is_unit(v) {
                    bad.push(format!("witness: P{}(m) = {} flagged unit", i + 1, f(v)));
                }
                if w.valuation != 0 {
                    bad.push(format!("witness: unit P{}(m) with valuation {}", i + 1, w.valuation));
                }
            }
            (Some(p), false) => {
                if !matches!(ring.is_prime(p), Ok(true)) {
                    bad.push(format!("witness: {} is not prime", f(p)));
                }
                if w.valuation != 1 {
                    bad.push(format!("witness: valuation ≠ 1 claimed ({})", w.valuation));
                }
                let actual = valuation_by_division(ring, p, v);
                if actual != Some(1) {
                    bad.push(format!(
                        "witness: valuation ≠ 1: v_{}(P{}(m)) = {:?}",
                        f(p),
                        i + 1,
                        actual
                    ));
                }
            }
            _ => bad.push(format!("witness: inconsistent prime/unit flag for P{}", i + 1)),
        }
    }

    for h in &cert.history {
        if h.param == cert.param {
            bad.push(format!("history: parameter {} repeated", f(&h.param)));
        }
        let mut earlier = Vec::with_capacity(n);
        let mut value = ring.one();
        for (p, g) in spec.polys.iter().zip(&cert.gammas) {
            let v = p
                .eval_in_ring(ring, &prog.term(ring, &h.param))
                .ok()
                .and_then(|v| ring.exact_div(&v, g));
            match v {
                Some(v) => {
                    value = ring.mul(&value, &v);
                    earlier.push(v);
                }
                None => {
                    bad.push(format!("history: cannot evaluate at {}", f(&h.param)));
                    break;
                }
            }
        }
        if earlier.len() != n {
            continue;
        }
        if value != h.value {
            bad.push(format!("history: value at {} is {}, attested {}", f(&h.param), f(&value), f(&h.value)));
        }
        let g = euclid_gcd(ring, &product, &value);
        if g != h.gcd {
            bad.push(format!("history: attested gcd {} != {}", f(&h.gcd), f(&g)));
        }
        if !ring.is_unit(&g) {
            bad.push(format!("history: gcd with the value at {} is {}", f(&h.param), f(&g)));
        }
        if value == product || earlier.iter().zip(&cert.reduced).any(|(a, b)| a == b) {
            bad.push(format!("distinct: value repeats the one at {}", f(&h.param)));
        }
    }

    for c in &spec.avoid {
        if !unit_gcd(ring, &product, c) {
            bad.push(format!("avoid: value not coprime to {}", f(c)));
        }
    }
    Verification { violations: bad }
}

/// Verifies a whole prefix, including that each certificate's history lists
/// exactly the earlier parameters and the full pairwise gcd table.
pub fn verify_stream<R: Pid>(
    ring: &R,
    spec: &ProblemSpec<R::Elem>,
    certs: &[WitnessCertificate<R::Elem>],
) -> Verification {
    let mut bad = Vec::new();
    for (k, c) in certs.iter().enumerate() {
        for v in verify_certificate(ring, spec, c).violations {
            bad.push(format!("#{k}: {v}"));
        }
        let params: Vec<&R::Elem> = c.history.iter().map(|h| &h.param).collect();
        let expected: Vec<&R::Elem> = certs[..k].iter().map(|e| &e.param).collect();
        if params != expected {
            bad.push(format!("#{k}: history does not match the stream prefix"));
        }
    }
    let products: Vec<R::Elem> = certs
        .iter()
        .map(|c| c.reduced.iter().fold(ring.one(), |acc, v| ring.mul(&acc, v)))
        .collect();
    for r in 0..products.len() {
        for s in r + 1..products.len() {
            if !unit_gcd(ring, &products[r], &products[s]) {
                bad.push(format!("#{r} and #{s}: values not coprime"));
            }
        }
    }
    Verification { violations: bad }
}

/// Every single-field tampering of `cert`, labelled by field.
pub fn mutations<R: Pid>(
    ring: &R,
    cert: &WitnessCertificate<R::Elem>,
) -> Vec<(String, WitnessCertificate<R::Elem>)> {
    let one = ring.one();
    let bump = |x: &R::Elem| ring.add(x, &one);
    let mut out = Vec::new();
    let mut push = |label: String, edit: &dyn Fn(&mut WitnessCertificate<R::Elem>)| {
        let mut c = cert.clone();
        edit(&mut c);
        out.push((label, c));
    };
    push("index".into(), &|c| c.index += 1);
    push("m".into(), &|c| c.m = bump(&c.m));
    push("param".into(), &|c| c.param = bump(&c.param));
    for i in 0..cert.values.len() {
        push(format!("values[{i}]"), &|c| c.values[i] = bump(&c.values[i]));
        push(format!("gammas[{i}]"), &|c| c.gammas[i] = bump(&c.gammas[i]));
        push(format!("reduced[{i}]"), &|c| c.reduced[i] = bump(&c.reduced[i]));
    }
    for (k, w) in cert.witnesses.iter().enumerate() {
        let value = cert.reduced[w.i].clone();
        let mut fake = bump(w.prime.as_ref().unwrap_or(&one));
        while ring.divides(&fake, &value) {
            fake = bump(&fake);
        }
        push(format!("witnesses[{k}].prime"), &|c| c.witnesses[k].prime = Some(fake.clone()));
        push(format!("witnesses[{k}].valuation"), &|c| c.witnesses[k].valuation += 1);
        push(format!("witnesses[{k}].unit"), &|c| c.witnesses[k].unit = !c.witnesses[k].unit);
    }
    for k in 0..cert.cross.len() {
        push(format!("cross[{k}].gcd"), &|c| c.cross[k].gcd = bump(&c.cross[k].gcd));
    }
    for k in 0..cert.history.len() {
        push(format!("history[{k}].param"), &|c| c.history[k].param = bump(&c.history[k].param));
        push(format!("history[{k}].value"), &|c| c.history[k].value = bump(&c.history[k].value));
        push(format!("history[{k}].gcd"), &|c| c.history[k].gcd = bump(&c.history[k].gcd));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{GeneratorConfig, GeneratorState};
    use crate::ring::{FpPolyRing, Integers, Localized};
    use crate::text::parse_poly;
    use num_bigint::BigInt;

    fn check_matrix<R: Pid>(ring: R, spec: ProblemSpec<R::Elem>, count: usize) {
        let mut g = GeneratorState::new(ring.clone(), spec.clone(), GeneratorConfig::default()).unwrap();
        let certs = g.take(count).unwrap();
        assert!(verify_stream(&ring, &spec, &certs).ok());
        for cert in &certs {
            assert!(verify_certificate(&ring, &spec, cert).ok());
            for (label, bad) in mutations(&ring, cert) {
                let v = verify_certificate(&ring, &spec, &bad);
                assert!(!v.ok(), "tampered {label} accepted");
            }
        }
    }

    #[test]
    fn mutation_matrix_integers() {
        let r = Integers::default();
        let spec = ProblemSpec::full(&r, vec![parse_poly(&r, "x^2+1").unwrap(), parse_poly(&r, "x^2+x+1").unwrap()]);
        check_matrix(r, spec, 5);
    }

    #[test]
    fn mutation_matrix_other_rings() {
        let l = Localized::new(3).unwrap();
        let spec = ProblemSpec::full(&l, vec![parse_poly(&l, "x^2+1").unwrap()]);
        check_matrix(l, spec, 4);
        let f = FpPolyRing::new(3).unwrap();
        let spec = ProblemSpec::full(&f, vec![parse_poly(&f, "x^2+t").unwrap()]);
        check_matrix(f, spec, 3);
    }

    #[test]
    fn tampered_witness_prime() {
        let r = Integers::default();
        let spec = ProblemSpec::full(&r, vec![parse_poly(&r, "x").unwrap()]);
        let mut g = GeneratorState::new(r.clone(), spec.clone(), GeneratorConfig::default()).unwrap();
        let mut cert = g.next().unwrap();
        let p = cert.witnesses[0].prime.clone().unwrap();
        let mut q = BigInt::from(2);
        while (&cert.reduced[0] % &q) == BigInt::from(0) || q == p {
            q += 1;
        }
        cert.witnesses[0].prime = Some(q);
        let v = verify_certificate(&r, &spec, &cert);
        assert!(v.violations.iter().any(|s| s.contains("valuation ≠ 1")));
    }

    #[test]
    fn euclid_matches_ring_gcd() {
        let r = Integers::default();
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (a, b) = (BigInt::from(a), BigInt::from(b));
                assert_eq!(euclid_gcd(&r, &a, &b), r.gcd(&a, &b));
            }
        }
        assert_eq!(valuation_by_division(&r, &BigInt::from(2), &BigInt::from(48)), Some(4));
    }
}
