//! Streams of arguments `m` whose values `P_i(m)` are pairwise coprime
//! across the stream, coprime across polynomials, and carry a witness prime
//! of multiplicity exactly one.
//!
//! Each emission proceeds as follows. A residue `m0` modulo `M` makes the
//! product polynomial nonzero modulo every prime of the fixed set `𝒞` (the
//! Bézout constants, denominators and `avoid`). Scanning `m0 + kM` gives a
//! point `y` where every separable `P_i` has a prime `π_i` that divides no
//! earlier value. A Taylor step `y + 𝔓` forces `π_i ∥ P_i`, and the final
//! scan over `y + 𝔓 + J₁ℛ` keeps every congruence while testing coprimality
//! with earlier values by direct gcd.

mod extract;
mod manip;

pub use extract::{extract_subset, Extraction};
pub use manip::{factor_manip, ManipEmission, Manipulation};

use serde_json::{json, Value};

use crate::frac::Frac;
use crate::oracle::verify_certificate;
use crate::poly::{bezout_constant, gcd_values, BezoutCertificate, FieldPoly, RESIDUE_CAP};
use crate::primitivity::ArithProgression;
use crate::ring::Pid;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConstraint {
    Positive,
    Negative,
}

/// Input of the construction. Indices are 0-based.
#[derive(Clone, Debug)]
pub struct ProblemSpec<E> {
    pub polys: Vec<FieldPoly<E>>,
    /// Indices whose values must be pairwise coprime at every emitted `m`.
    pub e: Vec<usize>,
    /// Indices of separable polynomials that get a witness prime.
    pub i: Vec<usize>,
    pub sign: Option<SignConstraint>,
    pub avoid: Vec<E>,
    pub progression: Option<ArithProgression<E>>,
}

impl<E: Clone + PartialEq> ProblemSpec<E> {
    /// `ℰ` = all indices, `ℐ` empty.
    pub fn new(polys: Vec<FieldPoly<E>>) -> Self {
        let e = (0..polys.len()).collect();
        ProblemSpec {
            polys,
            e,
            i: Vec::new(),
            sign: None,
            avoid: Vec::new(),
            progression: None,
        }
    }

    /// `ℰ` = all indices, `ℐ` = the separable ones.
    pub fn full<R: Pid<Elem = E>>(ring: &R, polys: Vec<FieldPoly<E>>) -> Self {
        let i = (0..polys.len()).filter(|&k| polys[k].is_separable(ring)).collect();
        ProblemSpec {
            i,
            ..ProblemSpec::new(polys)
        }
    }

    pub fn with_e(mut self, e: Vec<usize>) -> Self {
        self.e = e;
        self
    }

    pub fn with_i(mut self, i: Vec<usize>) -> Self {
        self.i = i;
        self
    }

    pub fn with_sign(mut self, sign: SignConstraint) -> Self {
        self.sign = Some(sign);
        self
    }

    pub fn with_avoid(mut self, avoid: Vec<E>) -> Self {
        self.avoid = avoid;
        self
    }

    pub fn with_progression(mut self, prog: ArithProgression<E>) -> Self {
        self.progression = Some(prog);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Candidates tried by each scan before giving up.
    pub scan_cap: u64,
    /// Largest residue system enumerated when searching `a_p`.
    pub residue_cap: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            scan_cap: 10_000,
            residue_cap: RESIDUE_CAP,
        }
    }
}

/// `v_p(B) + 1` for `P = Q/B`: arguments congruent modulo `p^ν` give values
/// congruent modulo `p`.
pub fn nu_exponent<R: Pid>(ring: &R, p: &FieldPoly<R::Elem>, prime: &R::Elem) -> u32 {
    ring.valuation(prime, &p.denominator(ring)) + 1
}

/// Least residue `a` modulo `prime^ν` with `P(a) ≢ 0 (mod prime)`.
pub fn nonvanishing_residue<R: Pid>(
    ring: &R,
    p: &FieldPoly<R::Elem>,
    prime: &R::Elem,
) -> Result<R::Elem, Error> {
    nonvanishing_residue_capped(ring, p, prime, RESIDUE_CAP)
}

fn nonvanishing_residue_capped<R: Pid>(
    ring: &R,
    p: &FieldPoly<R::Elem>,
    prime: &R::Elem,
    cap: u64,
) -> Result<R::Elem, Error> {
    let modulus = ring.pow(prime, nu_exponent(ring, p, prime));
    let good = |a: &R::Elem| -> Result<bool, Error> {
        Ok(!ring.divides(prime, &p.eval_in_ring(ring, a)?))
    };
    match ring.residue_system(&modulus, cap) {
        Some(residues) => {
            for a in residues {
                if good(&a)? {
                    return Ok(a);
                }
            }
            Err(Error::Precondition(format!(
                "{} vanishes modulo {} on every residue class, so it is not totally primitive",
                p.format(ring),
                ring.format_elem(prime)
            )))
        }
        None => {
            for idx in 0..cap {
                let a = ring.canonical_residue(&ring.candidate(idx), &modulus);
                if good(&a)? {
                    return Ok(a);
                }
            }
            Err(Error::SearchBudgetExhausted {
                stage: format!("nonvanishing residue modulo {}", ring.format_elem(&modulus)),
                budget: cap,
            })
        }
    }
}

/// Bézout data of the construction.
#[derive(Clone, Debug)]
pub struct BezoutCache<E> {
    /// `f P_i + g P_j = C_ij` for `i < j` in `ℰ`.
    pub pairs: Vec<(usize, usize, BezoutCertificate<E>)>,
    /// Denominators `K_i` with `Q_i = K_i P_i` over ℛ.
    pub k: Vec<E>,
    /// `φ Q_i + ψ Q_i' = D_i` for `i` in `ℐ`.
    pub d: Vec<(usize, BezoutCertificate<E>)>,
    /// Normalized primes of every `C_ij`, `D_i`, `K_i` and `avoid` element,
    /// plus all of Spec ℛ when it is finite.
    pub calc: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<E> {
    pub i: usize,
    /// `None` together with `unit` when the value is a unit.
    pub prime: Option<E>,
    pub valuation: u32,
    pub unit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossAttestation<E> {
    pub i: usize,
    pub j: usize,
    pub gcd: E,
}

/// Coprimality with an earlier emission, identified by its parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistoryAttestation<E> {
    pub param: E,
    pub value: E,
    pub gcd: E,
}

/// Everything needed to re-check one emission from scratch.
///
/// `m = a + b * param` for the progression `(a, b)`. `values[i] = P_i(m)`
/// and `values[i] = gammas[i] * reduced[i]`; attestations refer to the
/// reduced values, which equal the values when there is no progression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate<E> {
    pub index: usize,
    pub m: E,
    pub param: E,
    pub values: Vec<E>,
    pub gammas: Vec<E>,
    pub reduced: Vec<E>,
    pub witnesses: Vec<Witness<E>>,
    pub cross: Vec<CrossAttestation<E>>,
    pub history: Vec<HistoryAttestation<E>>,
}

impl<E: Clone + PartialEq> WitnessCertificate<E> {
    /// Product of the reduced values.
    pub fn product<R: Pid<Elem = E>>(&self, ring: &R) -> E {
        self.reduced.iter().fold(ring.one(), |acc, v| ring.mul(&acc, v))
    }

    /// JSON form; polynomial indices are 1-based.
    pub fn to_json<R: Pid<Elem = E>>(&self, ring: &R) -> Value {
        let f = |e: &E| ring.format_elem(e);
        json!({
            "m": f(&self.m),
            "param": f(&self.param),
            "values": self.values.iter().map(f).collect::<Vec<_>>(),
            "reduced": self.reduced.iter().map(f).collect::<Vec<_>>(),
            "witnesses": self.witnesses.iter().map(|w| json!({
                "i": w.i + 1,
                "prime": w.prime.as_ref().map(f),
                "valuation": w.valuation,
                "unit": w.unit,
            })).collect::<Vec<_>>(),
            "cross_gcds": self.cross.iter().map(|c| json!({
                "i": c.i + 1,
                "j": c.j + 1,
                "gcd": f(&c.gcd),
            })).collect::<Vec<_>>(),
            "pairwise_coprime": self.history.iter().all(|h| ring.is_unit(&h.gcd)),
        })
    }
}

#[derive(Clone, Debug)]
struct Emitted<E> {
    param: E,
    reduced: Vec<E>,
    product: E,
}

/// Sequential generator for one [`ProblemSpec`].
#[derive(Clone, Debug)]
pub struct GeneratorState<R: Pid> {
    ring: R,
    spec: ProblemSpec<R::Elem>,
    config: GeneratorConfig,
    prog: ArithProgression<R::Elem>,
    gammas: Vec<R::Elem>,
    reduced: Vec<FieldPoly<R::Elem>>,
    integral: Vec<FieldPoly<R::Elem>>,
    cache: BezoutCache<R::Elem>,
    base: R::Elem,
    modulus: R::Elem,
    unit_path: bool,
    emitted: Vec<Emitted<R::Elem>>,
}

fn product_poly<R: Pid>(ring: &R, polys: &[FieldPoly<R::Elem>]) -> FieldPoly<R::Elem> {
    polys.iter().fold(FieldPoly::one(ring), |acc, p| acc.mul(ring, p))
}

fn push_primes<R: Pid>(ring: &R, calc: &mut Vec<R::Elem>, x: &R::Elem) -> Result<(), Error> {
    for q in ring.factor(x)?.factors.into_iter().map(|(q, _)| q) {
        if !calc.contains(&q) {
            calc.push(q);
        }
    }
    Ok(())
}

fn require_totally_primitive<R: Pid>(
    ring: &R,
    p: &FieldPoly<R::Elem>,
    what: &str,
) -> Result<(), Error> {
    let g = gcd_values(ring, p)?;
    if ring.is_unit(&g) {
        Ok(())
    } else {
        Err(Error::NotTotallyPrimitive {
            gcd: format!("{} (for {what})", ring.format_elem(&g)),
        })
    }
}

impl<R: Pid> GeneratorState<R> {
    pub fn new(ring: R, spec: ProblemSpec<R::Elem>, config: GeneratorConfig) -> Result<Self, Error> {
        let n = spec.polys.len();
        if n == 0 {
            return Err(Error::InvalidParameter("at least one polynomial is required".into()));
        }
        if let Some(&k) = spec.e.iter().chain(&spec.i).find(|&&k| k >= n) {
            return Err(Error::InvalidParameter(format!("index {} out of range", k + 1)));
        }
        if let Some(&k) = spec.i.iter().find(|k| !spec.e.contains(k)) {
            return Err(Error::InvalidParameter(format!("index {} is in I but not in E", k + 1)));
        }
        if spec.sign.is_some() && ring.sign(&ring.one()).is_none() {
            return Err(Error::UnsupportedBackend {
                op: "sign constraint",
                ring: ring.tag(),
            });
        }
        for (k, p) in spec.polys.iter().enumerate() {
            if p.degree().unwrap_or(0) == 0 {
                return Err(Error::Precondition(format!("P{} is constant", k + 1)));
            }
            require_totally_primitive(&ring, p, &format!("P{}", k + 1))?;
        }
        require_totally_primitive(&ring, &product_poly(&ring, &spec.polys), "the product")?;

        let prog = match &spec.progression {
            Some(p) => ArithProgression::new(&ring, p.a.clone(), p.b.clone())?,
            None => ArithProgression::trivial(&ring),
        };
        let affine = prog.affine(&ring);
        let mut gammas = Vec::with_capacity(n);
        let mut reduced = Vec::with_capacity(n);
        for p in &spec.polys {
            let composed = p.compose(&ring, &affine);
            let g = gcd_values(&ring, &composed)?;
            reduced.push(composed.scale(&ring, &Frac::new(&ring, ring.one(), g.clone())));
            gammas.push(g);
        }
        let product = product_poly(&ring, &reduced);
        require_totally_primitive(&ring, &product, "the product on the progression")?;

        let mut calc = Vec::new();
        let mut pairs = Vec::new();
        for (x, &i) in spec.e.iter().enumerate() {
            for &j in &spec.e[x + 1..] {
                let cert = bezout_constant(&ring, &reduced[i], &reduced[j]).map_err(|_| {
                    Error::NotCoprime(format!("P{} and P{} share a factor in K[X]", i + 1, j + 1))
                })?;
                push_primes(&ring, &mut calc, &cert.c)?;
                pairs.push((i.min(j), i.max(j), cert));
            }
        }
        let k: Vec<R::Elem> = reduced.iter().map(|p| p.denominator(&ring)).collect();
        let integral: Vec<FieldPoly<R::Elem>> = reduced
            .iter()
            .zip(&k)
            .map(|(p, k)| p.scale_elem(&ring, k))
            .collect();
        let mut d = Vec::new();
        for &i in &spec.i {
            if !reduced[i].is_separable(&ring) {
                return Err(Error::Precondition(format!("P{} has multiple roots", i + 1)));
            }
            let q = &integral[i];
            let cert = bezout_constant(&ring, q, &q.derivative(&ring))?;
            push_primes(&ring, &mut calc, &cert.c)?;
            push_primes(&ring, &mut calc, &k[i])?;
            d.push((i, cert));
        }
        for c in &spec.avoid {
            if ring.is_zero(c) {
                return Err(Error::InvalidParameter("avoid set contains 0".into()));
            }
            push_primes(&ring, &mut calc, c)?;
        }
        let spec_primes = ring.enumerate_primes(0);
        let unit_path = spec_primes.spec_finite;
        if unit_path {
            for q in spec_primes.primes {
                if !calc.contains(&q) {
                    calc.push(q);
                }
            }
        }

        let mut congruences = Vec::with_capacity(calc.len());
        let mut modulus = ring.one();
        for q in &calc {
            let qn = ring.pow(q, nu_exponent(&ring, &product, q));
            let a = nonvanishing_residue_capped(&ring, &product, q, config.residue_cap)?;
            modulus = ring.mul(&modulus, &qn);
            congruences.push((a, qn));
        }
        let base = ring.crt(&congruences)?;

        Ok(GeneratorState {
            cache: BezoutCache { pairs, k, d, calc },
            ring,
            spec,
            config,
            prog,
            gammas,
            reduced,
            integral,
            base,
            modulus,
            unit_path,
            emitted: Vec::new(),
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn spec(&self) -> &ProblemSpec<R::Elem> {
        &self.spec
    }

    pub fn cache(&self) -> &BezoutCache<R::Elem> {
        &self.cache
    }

    /// Per-polynomial value gcds on the progression (all 1 without one).
    pub fn gammas(&self) -> &[R::Elem] {
        &self.gammas
    }

    /// `γ`: the product of [`Self::gammas`].
    pub fn gamma(&self) -> R::Elem {
        self.gammas.iter().fold(self.ring.one(), |acc, g| self.ring.mul(&acc, g))
    }

    /// The CRT modulus `M` and the base residue modulo it.
    pub fn congruence(&self) -> (&R::Elem, &R::Elem) {
        (&self.base, &self.modulus)
    }

    /// The emitted arguments `S_k`.
    pub fn emitted(&self) -> Vec<R::Elem> {
        self.emitted
            .iter()
            .map(|e| self.prog.term(&self.ring, &e.param))
            .collect()
    }

    fn values_at(&self, x: &R::Elem) -> Result<Vec<R::Elem>, Error> {
        self.reduced.iter().map(|p| p.eval_in_ring(&self.ring, x)).collect()
    }

    /// Step 3: a point `y ≡ m0 (mod M)` and one fresh prime per separable index.
    fn select_witnesses(&self) -> Result<(R::Elem, Vec<(usize, R::Elem)>), Error> {
        let ring = &self.ring;
        'scan: for idx in 0..self.config.scan_cap {
            let y = ring.add(&self.base, &ring.mul(&self.modulus, &ring.candidate(idx)));
            let mut chosen: Vec<(usize, R::Elem)> = Vec::new();
            for &i in &self.spec.i {
                let v = self.reduced[i].eval_in_ring(ring, &y)?;
                if ring.is_zero(&v) || ring.is_unit(&v) {
                    continue 'scan;
                }
                let fresh = ring.factor(&v)?.factors.into_iter().map(|(q, _)| q).find(|q| {
                    !self.cache.calc.contains(q)
                        && !chosen.iter().any(|(_, c)| c == q)
                        && !self.emitted.iter().any(|e| ring.divides(q, &e.product))
                });
                match fresh {
                    Some(q) => chosen.push((i, q)),
                    None => continue 'scan,
                }
            }
            return Ok((y, chosen));
        }
        Err(Error::SearchBudgetExhausted {
            stage: "witness prime selection".into(),
            budget: self.config.scan_cap,
        })
    }

    /// Emits the next element with its certificate.
    pub fn next(&mut self) -> Result<WitnessCertificate<R::Elem>, Error> {
        let cert = self.search()?;
        let product = cert.product(&self.ring);
        self.emitted.push(Emitted {
            param: cert.param.clone(),
            reduced: cert.reduced.clone(),
            product,
        });
        Ok(cert)
    }

    fn search(&self) -> Result<WitnessCertificate<R::Elem>, Error> {
        let ring = &self.ring;
        let (y, pis) = if self.unit_path || self.spec.i.is_empty() {
            (self.base.clone(), Vec::new())
        } else {
            self.select_witnesses()?
        };
        // Step 4: y' = y + 𝔓 makes every π_i exactly divide Q_i.
        let mut frak = self.modulus.clone();
        let mut j1 = self.modulus.clone();
        for (i, pi) in &pis {
            let sq = ring.mul(pi, pi);
            let qi = self.integral[*i].eval_in_ring(ring, &y)?;
            frak = ring.mul(&frak, if ring.divides(&sq, &qi) { pi } else { &sq });
            j1 = ring.mul(&j1, &sq);
        }
        let y1 = ring.add(&y, &frak);
        // Step 5: scan y' + J₁ℛ.
        for idx in 0..self.config.scan_cap {
            let z = ring.add(&y1, &ring.mul(&j1, &ring.candidate(idx)));
            if let Some(cert) = self.try_emit(&z, &pis)? {
                let check = verify_certificate(ring, &self.spec, &cert);
                if !check.ok() {
                    return Err(Error::CertificateRejected(check.violations.join("; ")));
                }
                return Ok(cert);
            }
        }
        Err(Error::SearchBudgetExhausted {
            stage: "refinement scan".into(),
            budget: self.config.scan_cap,
        })
    }

    /// Tests every clause at `z`; `None` rejects the candidate.
    fn try_emit(
        &self,
        z: &R::Elem,
        pis: &[(usize, R::Elem)],
    ) -> Result<Option<WitnessCertificate<R::Elem>>, Error> {
        let ring = &self.ring;
        let m = self.prog.term(ring, z);
        if let Some(sign) = self.spec.sign {
            let want = match sign {
                SignConstraint::Positive => std::cmp::Ordering::Greater,
                SignConstraint::Negative => std::cmp::Ordering::Less,
            };
            if ring.sign(&m) != Some(want) {
                return Ok(None);
            }
        }
        if self.emitted.iter().any(|e| &e.param == z) {
            return Ok(None);
        }
        let reduced = self.values_at(z)?;
        if reduced.iter().any(|v| ring.is_zero(v)) {
            return Ok(None);
        }
        let product = reduced.iter().fold(ring.one(), |acc, v| ring.mul(&acc, v));
        let mut history = Vec::with_capacity(self.emitted.len());
        for e in &self.emitted {
            let g = ring.gcd(&product, &e.product);
            if !ring.is_unit(&g)
                || e.product == product
                || e.reduced.iter().zip(&reduced).any(|(a, b)| a == b)
            {
                return Ok(None);
            }
            history.push(HistoryAttestation {
                param: e.param.clone(),
                value: e.product.clone(),
                gcd: g,
            });
        }
        if self.spec.avoid.iter().any(|c| !ring.are_coprime(&product, c)) {
            return Ok(None);
        }
        let mut cross = Vec::new();
        for (i, j, _) in &self.cache.pairs {
            let g = ring.gcd(&reduced[*i], &reduced[*j]);
            if !ring.is_unit(&g) || reduced[*i] == reduced[*j] {
                return Ok(None);
            }
            cross.push(CrossAttestation { i: *i, j: *j, gcd: g });
        }
        let mut witnesses = Vec::with_capacity(self.spec.i.len());
        for &i in &self.spec.i {
            let w = match pis.iter().find(|(k, _)| *k == i) {
                Some((_, pi)) => {
                    let v = ring.valuation(pi, &reduced[i]);
                    if v != 1 {
                        return Ok(None);
                    }
                    Witness {
                        i,
                        prime: Some(pi.clone()),
                        valuation: 1,
                        unit: false,
                    }
                }
                None => {
                    if !ring.is_unit(&reduced[i]) {
                        return Ok(None);
                    }
                    Witness {
                        i,
                        prime: None,
                        valuation: 0,
                        unit: true,
                    }
                }
            };
            witnesses.push(w);
        }
        let values = self
            .spec
            .polys
            .iter()
            .map(|p| p.eval_in_ring(ring, &m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(WitnessCertificate {
            index: self.emitted.len(),
            m,
            param: z.clone(),
            values,
            gammas: self.gammas.clone(),
            reduced,
            witnesses,
            cross,
            history,
        }))
    }

    /// Emits `count` elements.
    pub fn take(&mut self, count: usize) -> Result<Vec<WitnessCertificate<R::Elem>>, Error> {
        (0..count).map(|_| self.next()).collect()
    }
}
