use super::{GeneratorConfig, GeneratorState, ProblemSpec, WitnessCertificate};
use crate::poly::{bezout_constant, gcd_values, BezoutCertificate, FieldPoly};
use crate::ring::Pid;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManipEmission<E> {
    pub m: E,
    pub p0_value: E,
    pub r_value: E,
    /// `gcd(P0(m), R(m))`, a unit.
    pub gcd: E,
    pub cert: WitnessCertificate<E>,
}

/// `P = P0^alpha * R` and a stream on which `P0(m)` is coprime to `R(m)`.
#[derive(Clone, Debug)]
pub struct Manipulation<E> {
    pub alpha: u32,
    pub r: FieldPoly<E>,
    /// `f P0 + g R = C`.
    pub bezout: BezoutCertificate<E>,
    pub emissions: Vec<ManipEmission<E>>,
}

/// Runs the generator on `P0` alone, avoiding the primes of `C` and of the
/// denominators of `R`.
pub fn factor_manip<R: Pid>(
    ring: &R,
    p: &FieldPoly<R::Elem>,
    p0: &FieldPoly<R::Elem>,
    count: usize,
    config: &GeneratorConfig,
) -> Result<Manipulation<R::Elem>, Error> {
    if p.degree().unwrap_or(0) == 0 || p0.degree().unwrap_or(0) == 0 {
        return Err(Error::Precondition("P and P0 must be nonconstant".into()));
    }
    let mut alpha = 0;
    let mut r = p.clone();
    loop {
        let (q, rem) = r.div_rem(ring, p0);
        if !rem.is_zero() {
            break;
        }
        r = q;
        alpha += 1;
    }
    if alpha == 0 {
        return Err(Error::Precondition(format!(
            "{} is not a factor of {}",
            p0.format(ring),
            p.format(ring)
        )));
    }
    for (what, poly) in [("P", p), ("P0", p0)] {
        let g = gcd_values(ring, poly)?;
        if !ring.is_unit(&g) {
            return Err(Error::NotTotallyPrimitive {
                gcd: format!("{} (for {what})", ring.format_elem(&g)),
            });
        }
    }
    let bezout = bezout_constant(ring, p0, &r).map_err(|_| {
        Error::Precondition(format!("{} is not a prime factor of {}", p0.format(ring), p.format(ring)))
    })?;
    let avoid: Vec<R::Elem> = [bezout.c.clone(), r.denominator(ring)]
        .into_iter()
        .filter(|c| !ring.is_unit(c))
        .collect();
    let mut spec = ProblemSpec::full(ring, vec![p0.clone()]);
    spec.avoid = avoid;
    let mut state = GeneratorState::new(ring.clone(), spec, config.clone())?;
    let mut emissions = Vec::with_capacity(count);
    for _ in 0..count {
        let cert = state.next()?;
        let p0_value = cert.values[0].clone();
        let r_value = r.eval_in_ring(ring, &cert.m)?;
        let gcd = ring.gcd(&p0_value, &r_value);
        if !ring.is_unit(&gcd) {
            return Err(Error::CertificateRejected(format!(
                "gcd(P0(m), R(m)) = {} at m = {}",
                ring.format_elem(&gcd),
                ring.format_elem(&cert.m)
            )));
        }
        emissions.push(ManipEmission {
            m: cert.m.clone(),
            p0_value,
            r_value,
            gcd,
            cert,
        });
    }
    Ok(Manipulation {
        alpha,
        r,
        bezout,
        emissions,
    })
}
