use num_bigint::BigInt;
use serde_json::{json, Value};

use totprim::generator::{extract_subset, GeneratorState, ProblemSpec, SignConstraint};
use totprim::oracle::{fpt_up_to, int_range, locunit_demo, scan_primes, scan_squarefree, swan_demo_seeded, verify_stream};
use totprim::poly::{factor_over_q, gcd_values, is_integrally_valued, repr_decompose, to_binomial};
use totprim::primitivity::{
    check_integer, composed_obstructions, reduce_mod_xp_minus_x, value_gcd_report, ArithProgression,
    PrimitivityReport,
};
use totprim::ring::{FpPolyRing, Localized, Pid};
use totprim::text::{parse_elem, parse_poly};
use totprim::{Error, FieldPoly, Integers};

use crate::config::{Config, RingSel};
use crate::table;
use crate::{Command, ScanMode, SignArg};

pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

pub struct Failure {
    pub error: Error,
    /// Work completed before the failure, e.g. the emitted prefix of a stream.
    pub partial: Option<Value>,
}

impl Failure {
    pub fn code(&self) -> u8 {
        if self.error.is_hypothesis_violation() {
            2
        } else if self.error.is_effort_exhausted() {
            3
        } else {
            1
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, partial: None }
    }
}

type Res = Result<Output, Failure>;

macro_rules! with_ring {
    ($cfg:expr, $r:ident => $body:expr) => {
        match $cfg.ring {
            RingSel::Z => {
                let $r = $cfg.integers();
                $body
            }
            RingSel::Fpt(p) => {
                let $r = FpPolyRing::with_seed(p, $cfg.seed)?;
                $body
            }
            RingSel::Zloc(p) => {
                let $r = Localized::new(p)?;
                $body
            }
        }
    };
}

pub fn run(cfg: &Config, cmd: &Command) -> Res {
    match cmd {
        Command::Check { poly, prog } => match cfg.ring {
            RingSel::Z => check_z(&cfg.integers(), poly, prog.as_deref()),
            _ => with_ring!(cfg, r => check_generic(&r, poly, prog.as_deref())),
        },
        Command::Decompose { poly } => with_ring!(cfg, r => decompose(&r, poly)),
        Command::Factor { poly } => match cfg.ring {
            RingSel::Z => factor(cfg, poly),
            _ => Err(unsupported("factor", cfg)),
        },
        Command::Generate { polys, count, coprime, witness, sign, avoid, prog } => {
            let args = GenerateArgs {
                polys,
                count: *count,
                coprime: coprime.as_deref(),
                witness: witness.as_deref(),
                sign: *sign,
                avoid,
                prog: prog.as_deref(),
            };
            with_ring!(cfg, r => generate(cfg, r, &args))
        }
        Command::Extract { polys, sample, values } => {
            with_ring!(cfg, r => extract(&r, polys, sample.as_deref(), values))
        }
        Command::Scan { mode, poly, range, maxdeg } => scan(cfg, *mode, poly, range.as_deref(), *maxdeg),
        Command::Swan { p, a, maxdeg } => swan(cfg, *p, *a, *maxdeg),
        Command::Locunit { p, poly, samples } => locunit(*p, poly, samples),
    }
}

fn unsupported(op: &'static str, cfg: &Config) -> Failure {
    Error::UnsupportedBackend { op, ring: cfg.ring_tag.clone() }.into()
}

fn parse_range(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::InvalidParameter(format!("range `{s}` is not `lo..hi`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty range `{s}`")));
    }
    if hi - lo > 10_000_000 {
        return Err(Error::InvalidParameter(format!("range `{s}` is too long")));
    }
    Ok((lo, hi))
}

fn parse_prog<R: Pid>(ring: &R, s: Option<&str>) -> Result<Option<ArithProgression<R::Elem>>, Error> {
    let Some(s) = s else { return Ok(None) };
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidParameter(format!("progression `{s}` is not `a,b`")))?;
    Ok(Some(ArithProgression::new(ring, parse_elem(ring, a)?, parse_elem(ring, b)?)?))
}

fn parse_polys<R: Pid>(ring: &R, polys: &[String]) -> Result<Vec<FieldPoly<R::Elem>>, Error> {
    polys.iter().map(|s| parse_poly(ring, s)).collect()
}

fn obstructions_json<R: Pid>(ring: &R, rep: &PrimitivityReport<R::Elem>) -> Vec<Value> {
    rep.obstructions
        .iter()
        .map(|o| json!({
            "prime": ring.format_elem(&o.prime),
            "classes": o.classes.iter().map(|c| c.tag()).collect::<Vec<_>>(),
        }))
        .collect()
}

fn obstruction_rows<R: Pid>(ring: &R, rep: &PrimitivityReport<R::Elem>) -> String {
    if rep.obstructions.is_empty() {
        return "obstructions: none\n".into();
    }
    let rows: Vec<Vec<String>> = rep
        .obstructions
        .iter()
        .map(|o| {
            let tags: Vec<&str> = o.classes.iter().map(|c| c.tag()).collect();
            vec![ring.format_elem(&o.prime), tags.join(",")]
        })
        .collect();
    table::render(&["prime", "classes"], &rows)
}

fn small_primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn check_z(ring: &Integers, poly: &str, prog: Option<&str>) -> Res {
    let p = parse_poly(ring, poly)?;
    let prog_v = parse_prog(ring, prog)?;
    let trivial = ArithProgression::trivial(ring);
    let pr = prog_v.as_ref().unwrap_or(&trivial);
    let rep = check_integer(ring, &p, pr)?;
    let value_gcd = gcd_values(ring, &p.compose(ring, &pr.affine(ring)))?;
    let mut out = json!({
        "poly": p.format(ring),
        "totally_primitive": rep.is_totally_primitive,
        "value_gcd": value_gcd.to_string(),
        "obstructions": obstructions_json(ring, &rep),
    });
    let mut lines = vec![
        ("poly", p.format(ring)),
        ("totally primitive", rep.is_totally_primitive.to_string()),
        ("value gcd", value_gcd.to_string()),
    ];
    if let Some(coeffs) = p.ring_coeffs(ring) {
        let mut reds = serde_json::Map::new();
        for q in small_primes_up_to(p.degree().unwrap_or(0) as u64) {
            let red = reduce_mod_xp_minus_x(&coeffs, q);
            let red = FieldPoly::from_ring_coeffs(ring, red.into_iter().map(BigInt::from).collect());
            reds.insert(q.to_string(), Value::String(red.format(ring)));
        }
        if !reds.is_empty() {
            let text: Vec<String> = reds.iter().map(|(q, r)| format!("{q}: {}", r.as_str().unwrap())).collect();
            lines.push(("mod x^p-x", text.join("; ")));
        }
        out["reductions"] = Value::Object(reds);
    }
    if let Some(a) = &prog_v {
        out["progression"] = json!({"a": a.a.to_string(), "b": a.b.to_string()});
        lines.insert(1, ("progression", format!("{} + {}*k", a.a, a.b)));
        if p.has_ring_coeffs(ring) && ring.is_unit(&gcd_values(ring, &p)?) {
            let c = composed_obstructions(ring, &p, a)?;
            out["gamma"] = Value::String(c.gamma.to_string());
            out["composed"] = json!({
                "poly": c.composed.format(ring),
                "obstructions": obstructions_json(ring, &c.report),
            });
            lines.push(("gamma", c.gamma.to_string()));
            lines.push(("P(a+bX)/gamma", c.composed.format(ring)));
        }
    }
    let text = table::pairs(&lines) + &obstruction_rows(ring, &rep);
    Ok(Output::ok(out, text))
}

fn check_generic<R: Pid>(ring: &R, poly: &str, prog: Option<&str>) -> Res {
    let p = parse_poly(ring, poly)?;
    let prog_v = parse_prog(ring, prog)?;
    let pr = prog_v.clone().unwrap_or_else(|| ArithProgression::trivial(ring));
    let rep = value_gcd_report(ring, &p, &pr)?;
    let value_gcd = gcd_values(ring, &p.compose(ring, &pr.affine(ring)))?;
    let mut out = json!({
        "poly": p.format(ring),
        "totally_primitive": rep.is_totally_primitive,
        "value_gcd": ring.format_elem(&value_gcd),
        "obstructions": obstructions_json(ring, &rep),
    });
    let mut lines = vec![
        ("poly", p.format(ring)),
        ("totally primitive", rep.is_totally_primitive.to_string()),
        ("value gcd", ring.format_elem(&value_gcd)),
    ];
    if let Some(a) = &prog_v {
        out["progression"] = json!({"a": ring.format_elem(&a.a), "b": ring.format_elem(&a.b)});
        out["gamma"] = Value::String(ring.format_elem(&rep.gamma));
        lines.insert(1, ("progression", format!("{} + ({})*k", ring.format_elem(&a.a), ring.format_elem(&a.b))));
        lines.push(("gamma", ring.format_elem(&rep.gamma)));
    }
    let text = table::pairs(&lines) + &obstruction_rows(ring, &rep);
    Ok(Output::ok(out, text))
}

fn decompose<R: Pid>(ring: &R, poly: &str) -> Res {
    let q = parse_poly(ring, poly)?;
    let d = repr_decompose(ring, &q)?;
    let iv = is_integrally_valued(ring, &q)?;
    let f = |e: &R::Elem| ring.format_elem(e);
    let out = json!({
        "poly": q.format(ring),
        "integrally_valued": iv,
        "a": f(&d.a),
        "b": f(&d.b),
        "p": d.p.format(ring),
    });
    let text = table::pairs(&[
        ("Q", q.format(ring)),
        ("integrally valued", iv.to_string()),
        ("A", f(&d.a)),
        ("B", f(&d.b)),
        ("P", d.p.format(ring)),
    ]);
    Ok(Output::ok(out, text))
}

fn factor(cfg: &Config, poly: &str) -> Res {
    let ring = cfg.integers();
    let q = parse_poly(&ring, poly)?;
    let fac = factor_over_q(&ring, &q, &cfg.factor_q)?;
    if fac.recompose(&ring) != q {
        return Err(Error::CertificateRejected("factorization does not multiply back to Q".into()).into());
    }
    let binom = to_binomial(&ring, &q);
    let out = json!({
        "poly": q.format(&ring),
        "a": fac.a.to_string(),
        "b": fac.b.to_string(),
        "gamma": fac.gamma.to_string(),
        "factors": fac.factors.iter().map(|(p, e)| json!({
            "poly": p.format(&ring),
            "multiplicity": e,
        })).collect::<Vec<_>>(),
        "binomial_coeffs": binom.coeffs.iter().map(|c| c.format(&ring)).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> = fac
        .factors
        .iter()
        .map(|(p, e)| vec![p.format(&ring), e.to_string()])
        .collect();
    let text = table::pairs(&[
        ("Q", q.format(&ring)),
        ("A", fac.a.to_string()),
        ("B", fac.b.to_string()),
        ("Gamma", fac.gamma.to_string()),
    ]) + &table::render(&["factor", "multiplicity"], &rows);
    Ok(Output::ok(out, text))
}

struct GenerateArgs<'a> {
    polys: &'a [String],
    count: usize,
    coprime: Option<&'a [usize]>,
    witness: Option<&'a [usize]>,
    sign: Option<SignArg>,
    avoid: &'a [String],
    prog: Option<&'a str>,
}

fn zero_based(idx: &[usize], n: usize) -> Result<Vec<usize>, Error> {
    idx.iter()
        .map(|&k| {
            if k == 0 || k > n {
                Err(Error::InvalidParameter(format!("index {k} is not in 1..{n}")))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

fn generate<R: Pid>(cfg: &Config, ring: R, a: &GenerateArgs) -> Res {
    let polys = parse_polys(&ring, a.polys)?;
    let n = polys.len();
    let mut spec = ProblemSpec::full(&ring, polys);
    if let Some(e) = a.coprime {
        spec.e = zero_based(e, n)?;
        spec.i.retain(|k| spec.e.contains(k));
    }
    if let Some(i) = a.witness {
        spec.i = zero_based(i, n)?;
    }
    spec.sign = a.sign.map(|s| match s {
        SignArg::Positive => SignConstraint::Positive,
        SignArg::Negative => SignConstraint::Negative,
    });
    spec.avoid = a.avoid.iter().map(|s| parse_elem(&ring, s)).collect::<Result<_, _>>()?;
    spec.progression = parse_prog(&ring, a.prog)?;

    let mut state = GeneratorState::new(ring.clone(), spec.clone(), cfg.generator.clone())?;
    let f = |e: &R::Elem| ring.format_elem(e);
    let (base, modulus) = state.congruence();
    let mut header = json!({
        "polys": spec.polys.iter().map(|p| p.format(&ring)).collect::<Vec<_>>(),
        "coprime": spec.e.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "witness": spec.i.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "gammas": state.gammas().iter().map(f).collect::<Vec<_>>(),
        "base": f(base),
        "modulus": f(modulus),
        "fixed_primes": state.cache().calc.iter().map(f).collect::<Vec<_>>(),
    });
    let mut certs = Vec::with_capacity(a.count);
    for _ in 0..a.count {
        match state.next() {
            Ok(c) => certs.push(c),
            Err(error) => {
                header["stream"] = Value::Array(certs.iter().map(|c| c.to_json(&ring)).collect());
                header["emitted"] = json!(certs.len());
                return Err(Failure { error, partial: Some(header) });
            }
        }
    }
    let check = verify_stream(&ring, &spec, &certs);
    if !check.ok() {
        return Err(Error::CertificateRejected(check.violations.join("; ")).into());
    }
    header["stream"] = Value::Array(certs.iter().map(|c| c.to_json(&ring)).collect());
    header["verified"] = Value::Bool(true);

    let rows: Vec<Vec<String>> = certs
        .iter()
        .map(|c| {
            let wit: Vec<String> = c
                .witnesses
                .iter()
                .map(|w| match &w.prime {
                    Some(p) => format!("P{}:{}", w.i + 1, f(p)),
                    None => format!("P{}:unit", w.i + 1),
                })
                .collect();
            vec![
                c.index.to_string(),
                f(&c.m),
                c.values.iter().map(f).collect::<Vec<_>>().join(", "),
                wit.join(" "),
            ]
        })
        .collect();
    let text = table::pairs(&[
        ("polys", spec.polys.iter().map(|p| p.format(&ring)).collect::<Vec<_>>().join(", ")),
        ("gammas", state.gammas().iter().map(f).collect::<Vec<_>>().join(", ")),
        ("verified", format!("{} emissions", certs.len())),
    ]) + &table::render(&["#", "m", "values", "witnesses"], &rows);
    Ok(Output::ok(header, text))
}

fn extract<R: Pid>(ring: &R, polys: &[String], sample: Option<&str>, values: &[String]) -> Res {
    let polys = parse_polys(ring, polys)?;
    let sample: Vec<R::Elem> = match sample {
        Some(s) => {
            let (lo, hi) = parse_range(s)?;
            int_range(lo, hi).iter().map(|m| ring.from_bigint(m)).collect()
        }
        None => values.iter().map(|s| parse_elem(ring, s)).collect::<Result<_, _>>()?,
    };
    let ex = extract_subset(ring, &sample, &polys)?;
    let f = |e: &R::Elem| ring.format_elem(e);
    let out = json!({
        "polys": polys.iter().map(|p| p.format(ring)).collect::<Vec<_>>(),
        "sample_size": sample.len(),
        "kept": ex.kept.iter().map(f).collect::<Vec<_>>(),
        "values": ex.values.iter().map(f).collect::<Vec<_>>(),
        "gcd_table": ex.gcd_table.iter().map(|r| r.iter().map(f).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "product_totally_primitive": ex.product_totally_primitive,
    });
    let rows: Vec<Vec<String>> = ex.kept.iter().zip(&ex.values).map(|(m, v)| vec![f(m), f(v)]).collect();
    let text = table::pairs(&[
        ("sample", sample.len().to_string()),
        ("kept", ex.kept.len().to_string()),
        ("product totally primitive", ex.product_totally_primitive.to_string()),
    ]) + &table::render(&["m", "product value"], &rows);
    Ok(Output::ok(out, text))
}

fn scan_output(rep: totprim::oracle::ScanReport) -> Output {
    let mut lines = vec![
        ("poly", rep.poly.clone()),
        ("range", rep.range.clone()),
        ("total", rep.total.to_string()),
        ("evaluated", rep.evaluated.to_string()),
        ("zeros", rep.zeros.to_string()),
        ("units", rep.units.to_string()),
    ];
    if let (Some(k), Some(d)) = (rep.squarefree, &rep.squarefree_density) {
        lines.push(("square-free", format!("{k} ({d})")));
    }
    if let (Some(k), Some(d)) = (rep.primes, &rep.prime_density) {
        lines.push(("prime", format!("{k} ({d})")));
    }
    if !rep.failed.is_empty() {
        lines.push(("not factored", rep.failed.join(", ")));
    }
    let text = table::pairs(&lines);
    Output::ok(serde_json::to_value(&rep).expect("json"), text)
}

fn scan(cfg: &Config, mode: ScanMode, poly: &str, range: Option<&str>, maxdeg: Option<u32>) -> Res {
    let need_range = || range.ok_or_else(|| Error::InvalidParameter("--range lo..hi is required".into()));
    match (&cfg.ring, mode) {
        (RingSel::Z, ScanMode::Prime) => {
            let r = cfg.integers();
            let s = need_range()?;
            let (lo, hi) = parse_range(s)?;
            let p = parse_poly(&r, poly)?;
            Ok(scan_output(scan_primes(&r, &p, &int_range(lo, hi), s, cfg.jobs)?))
        }
        (_, ScanMode::Prime) => Err(unsupported("scan --mode prime", cfg)),
        (RingSel::Fpt(q), ScanMode::Squarefree) => {
            let r = FpPolyRing::with_seed(*q, cfg.seed)?;
            let d = maxdeg.ok_or_else(|| Error::InvalidParameter("--maxdeg is required over fpt".into()))?;
            if d > 8 {
                return Err(Error::InvalidParameter(format!("--maxdeg {d} exceeds 8")).into());
            }
            let p = parse_poly(&r, poly)?;
            Ok(scan_output(scan_squarefree(&r, &p, &fpt_up_to(&r, d), &format!("deg<={d}"), cfg.jobs)?))
        }
        (_, ScanMode::Squarefree) => with_ring!(cfg, r => {
            let s = need_range()?;
            let (lo, hi) = parse_range(s)?;
            let p = parse_poly(&r, poly)?;
            let elems: Vec<_> = int_range(lo, hi).iter().map(|m| r.from_bigint(m)).collect();
            Ok(scan_output(scan_squarefree(&r, &p, &elems, s, cfg.jobs)?))
        }),
    }
}

fn swan(cfg: &Config, p: u64, a: u64, maxdeg: u32) -> Res {
    let rep = swan_demo_seeded(p, a, maxdeg, Some(cfg.seed))?;
    let rows: Vec<Vec<String>> = rep
        .entries
        .iter()
        .map(|e| {
            vec![
                e.f.clone(),
                e.degree.to_string(),
                e.factors.to_string(),
                e.separable.to_string(),
                e.t_divides_f.to_string(),
            ]
        })
        .collect();
    let text = table::pairs(&[
        ("F", format!("f^{} + t^{a} over F_{p}[t]", 4 * p)),
        ("polynomials f", rep.total.to_string()),
        ("reducible F", rep.reducible.to_string()),
        ("irreducible F", rep.irreducible.len().to_string()),
        ("separable, t not dividing f", rep.parity_checked.to_string()),
        ("even factor count", rep.even.to_string()),
    ]) + &table::render(&["f", "deg F", "factors", "separable", "t | f"], &rows);
    let code = if rep.holds() { 0 } else { 1 };
    Ok(Output { json: serde_json::to_value(&rep).expect("json"), text, code })
}

fn locunit(p: u64, poly: &str, samples: &[String]) -> Res {
    let r = Localized::new(p)?;
    let pol = parse_poly(&r, poly)?;
    let samples = samples.iter().map(|s| parse_elem(&r, s)).collect::<Result<Vec<_>, _>>()?;
    let rep = locunit_demo(&r, &pol, &samples)?;
    let rows: Vec<Vec<String>> = rep
        .samples
        .iter()
        .map(|s| vec![s.m.clone(), s.value.clone(), s.vp.to_string()])
        .collect();
    let text = table::pairs(&[
        ("p", rep.p.clone()),
        ("poly", rep.poly.clone()),
        ("all units", rep.all_units.to_string()),
    ]) + &table::render(&["m", "P(m)", "v_p"], &rows);
    let code = if rep.all_units { 0 } else { 1 };
    Ok(Output { json: serde_json::to_value(&rep).expect("json"), text, code })
}
