use serde::Serialize;

use crate::poly::FieldPoly;
use crate::ring::{LocElem, Localized, Pid};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocUnitSample {
    pub m: String,
    pub value: String,
    pub vp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocUnitReport {
    pub p: String,
    pub poly: String,
    pub samples: Vec<LocUnitSample>,
    pub all_units: bool,
}

/// Checks `v_p(P(m)) = 0` on every sample for `P` without roots modulo `p`.
pub fn locunit_demo(
    ring: &Localized,
    p: &FieldPoly<LocElem>,
    samples: &[LocElem],
) -> Result<LocUnitReport, Error> {
    if !p.has_ring_coeffs(ring) {
        return Err(Error::NonIntegerCoefficients);
    }
    let prime = ring.prime().clone();
    let small: u64 = (&prime).try_into().map_err(|_| Error::InvalidParameter("prime too large".into()))?;
    for r in 0..small {
        let v = p.eval_in_ring(ring, &ring.from_i64(r as i64))?;
        if ring.is_zero(&v) || ring.vp(&v) > 0 {
            return Err(Error::Precondition(format!(
                "{} has the root {r} modulo {prime}",
                p.format(ring)
            )));
        }
    }
    let mut out = Vec::with_capacity(samples.len());
    for m in samples {
        let v = p.eval_in_ring(ring, m)?;
        out.push(LocUnitSample {
            m: ring.format_elem(m),
            value: ring.format_elem(&v),
            vp: ring.vp(&v),
        });
    }
    Ok(LocUnitReport {
        p: prime.to_string(),
        poly: p.format(ring),
        all_units: out.iter().all(|s| s.vp == 0),
        samples: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_elem, parse_poly};

    #[test]
    fn examples() {
        let r = Localized::new(3).unwrap();
        let p = parse_poly(&r, "x^2+1").unwrap();
        let samples: Vec<LocElem> = ["0", "1", "1/2", "7/5", "-4"]
            .iter()
            .map(|s| parse_elem(&r, s).unwrap())
            .collect();
        let rep = locunit_demo(&r, &p, &samples).unwrap();
        assert!(rep.all_units);
        assert_eq!(rep.samples[2].value, "5/4");

        let r2 = Localized::new(2).unwrap();
        let p = parse_poly(&r2, "x^2+x+1").unwrap();
        let samples: Vec<LocElem> = (-20..20).map(|k| r2.from_i64(k)).collect();
        assert!(locunit_demo(&r2, &p, &samples).unwrap().all_units);

        let r5 = Localized::new(5).unwrap();
        let p = parse_poly(&r5, "x^2+1").unwrap();
        match locunit_demo(&r5, &p, &[]) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("root 2")),
            other => panic!("{other:?}"),
        }
    }
}
