//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON document,
//! either `{"ok": true, "result": ...}` or `{"ok": false, "error": ...}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use totprim::generator::{GeneratorConfig, GeneratorState, ProblemSpec};
use totprim::oracle::{swan_demo, verify_stream};
use totprim::poly::gcd_values;
use totprim::primitivity::{value_gcd_report, ArithProgression};
use totprim::text::parse_poly;
use totprim::{Error, FpPolyRing, Integers, Localized, Pid};

const MAX_COUNT: u32 = 40;
const MAX_SWAN_DEGREE: u32 = 3;

fn wrap(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => json!({"ok": true, "result": v}),
        Err(e) => json!({"ok": false, "error": e.to_string()}),
    }
    .to_string()
}

macro_rules! on_ring {
    ($tag:expr, $r:ident => $body:expr) => {{
        match $tag.trim() {
            "z" | "" => {
                let $r = Integers::default();
                $body
            }
            t => match t.split_once(':') {
                Some(("fpt", p)) => {
                    let $r = FpPolyRing::new(parse_prime(p)?)?;
                    $body
                }
                Some(("zloc", p)) => {
                    let $r = Localized::new(parse_prime(p)?)?;
                    $body
                }
                _ => Err(Error::InvalidParameter(format!("unknown ring `{t}`"))),
            },
        }
    }};
}

fn parse_prime(p: &str) -> Result<u64, Error> {
    p.parse().map_err(|_| Error::InvalidParameter(format!("bad prime `{p}`")))
}

fn check_on<R: Pid>(ring: &R, poly: &str) -> Result<Value, Error> {
    let p = parse_poly(ring, poly)?;
    let rep = value_gcd_report(ring, &p, &ArithProgression::trivial(ring))?;
    Ok(json!({
        "poly": p.format(ring),
        "totally_primitive": rep.is_totally_primitive,
        "value_gcd": ring.format_elem(&gcd_values(ring, &p)?),
        "obstructions": rep.primes().map(|q| ring.format_elem(q)).collect::<Vec<_>>(),
    }))
}

fn generate_on<R: Pid>(ring: R, polys: &str, count: u32) -> Result<Value, Error> {
    if count > MAX_COUNT {
        return Err(Error::InvalidParameter(format!("count is limited to {MAX_COUNT} here")));
    }
    let polys = polys
        .split(',')
        .map(|s| parse_poly(&ring, s))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = ProblemSpec::full(&ring, polys);
    let mut state = GeneratorState::new(ring.clone(), spec.clone(), GeneratorConfig::default())?;
    let certs = state.take(count as usize)?;
    let verified = verify_stream(&ring, &spec, &certs).ok();
    Ok(json!({
        "polys": spec.polys.iter().map(|p| p.format(&ring)).collect::<Vec<_>>(),
        "stream": certs.iter().map(|c| c.to_json(&ring)).collect::<Vec<_>>(),
        "verified": verified,
    }))
}

/// Total primitivity of one polynomial over `ring` (`z`, `fpt:p`, `zloc:p`).
#[wasm_bindgen]
pub fn check(poly: &str, ring: &str) -> String {
    wrap((|| on_ring!(ring, r => check_on(&r, poly)))())
}

/// The first `count` certified emissions for comma-separated polynomials.
#[wasm_bindgen]
pub fn generate(polys: &str, count: u32, ring: &str) -> String {
    wrap((|| on_ring!(ring, r => generate_on(r, polys, count)))())
}

/// Summary of the factorizations of `f^(4p) + t^a` over 𝔽_p[t].
#[wasm_bindgen]
pub fn swan(p: u32, a: u32, maxdeg: u32) -> String {
    wrap((|| {
        if maxdeg > MAX_SWAN_DEGREE {
            return Err(Error::InvalidParameter(format!("maxdeg is limited to {MAX_SWAN_DEGREE} here")));
        }
        let rep = swan_demo(p as u64, a as u64, maxdeg)?;
        Ok(json!({
            "total": rep.total,
            "reducible": rep.reducible,
            "irreducible": rep.irreducible,
            "parity_checked": rep.parity_checked,
            "even": rep.even,
            "holds": rep.holds(),
            "entries": rep.entries,
        }))
    })())
}
