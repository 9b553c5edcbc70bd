use crate::poly::{bezout_constant, gcd_values, FieldPoly};
use crate::ring::Pid;
use crate::Error;

/// Greedy subset of a sample with pairwise coprime product values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction<E> {
    pub kept: Vec<E>,
    /// `prod_i P_i(m)` for each kept `m`.
    pub values: Vec<E>,
    /// `gcd(values[r], values[s])` for all `r`, `s`.
    pub gcd_table: Vec<Vec<E>>,
    /// Two coprime values (or one unit value) already force the gcd of all
    /// values of the product to be a unit.
    pub product_totally_primitive: bool,
}

/// Walks `sample` in order, keeping `m` when the product value is nonzero,
/// coprime to every kept value and coprime to the Bézout constants of the
/// coprime pairs of polynomials.
pub fn extract_subset<R: Pid>(
    ring: &R,
    sample: &[R::Elem],
    polys: &[FieldPoly<R::Elem>],
) -> Result<Extraction<R::Elem>, Error> {
    for (k, p) in polys.iter().enumerate() {
        let g = gcd_values(ring, p)?;
        if !ring.is_unit(&g) {
            return Err(Error::NotTotallyPrimitive {
                gcd: format!("{} (for P{})", ring.format_elem(&g), k + 1),
            });
        }
    }
    let mut constants = Vec::new();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if let Ok(cert) = bezout_constant(ring, &polys[i], &polys[j]) {
                constants.push(cert.c);
            }
        }
    }
    let mut kept = Vec::new();
    let mut values: Vec<R::Elem> = Vec::new();
    for m in sample {
        let mut v = ring.one();
        for p in polys {
            v = ring.mul(&v, &p.eval_in_ring(ring, m)?);
        }
        if ring.is_zero(&v)
            || constants.iter().any(|c| !ring.are_coprime(&v, c))
            || values.iter().any(|w| !ring.are_coprime(&v, w))
        {
            continue;
        }
        kept.push(m.clone());
        values.push(v);
    }
    let gcd_table = values
        .iter()
        .map(|a| values.iter().map(|b| ring.gcd(a, b)).collect())
        .collect();
    let product_totally_primitive = values.len() >= 2 || values.iter().any(|v| ring.is_unit(v));
    Ok(Extraction {
        kept,
        values,
        gcd_table,
        product_totally_primitive,
    })
}
