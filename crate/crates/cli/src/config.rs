use serde_json::{json, Value};
use totprim::generator::GeneratorConfig;
use totprim::poly::FactorConfig;
use totprim::ring::IntFactorConfig;
use totprim::{Error, FpPolyRing, Integers, Localized};

use crate::GlobalArgs;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSel {
    Z,
    Fpt(u64),
    Zloc(u64),
}

impl RingSel {
    pub fn parse(s: &str) -> Result<Self, Error> {
        let prime = |p: &str| {
            p.parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("bad prime `{p}` in --ring {s}")))
        };
        match s.split_once(':') {
            None if s == "z" => Ok(RingSel::Z),
            Some(("fpt", p)) => Ok(RingSel::Fpt(prime(p)?)),
            Some(("zloc", p)) => Ok(RingSel::Zloc(prime(p)?)),
            _ => Err(Error::InvalidParameter(format!(
                "unknown ring `{s}`; expected z, fpt:<p> or zloc:<p>"
            ))),
        }
    }
}

/// Resolved global options; echoed as the header of every JSON document.
#[derive(Clone, Debug)]
pub struct Config {
    pub ring: RingSel,
    pub ring_tag: String,
    pub json: bool,
    pub seed: u64,
    pub jobs: usize,
    pub generator: GeneratorConfig,
    pub int_factor: IntFactorConfig,
    pub factor_q: FactorConfig,
}

impl Config {
    pub fn from_args(a: &GlobalArgs) -> Result<Self, Error> {
        let ring = RingSel::parse(&a.ring)?;
        let ring_tag = match ring {
            RingSel::Z => "z".to_string(),
            RingSel::Fpt(p) => FpPolyRing::with_seed(p, a.seed).map(|_| format!("fpt:{p}"))?,
            RingSel::Zloc(p) => Localized::new(p).map(|_| format!("zloc:{p}"))?,
        };
        Ok(Config {
            ring,
            ring_tag,
            json: a.json,
            seed: a.seed,
            jobs: a.jobs as usize,
            generator: GeneratorConfig {
                scan_cap: a.scan_cap,
                residue_cap: a.residue_cap,
            },
            int_factor: IntFactorConfig {
                trial_bound: a.trial_bound,
                rho_iterations: a.rho_iterations,
            },
            factor_q: FactorConfig {
                degree_cap: a.degree_cap as usize,
                ..FactorConfig::default()
            },
        })
    }

    pub fn integers(&self) -> Integers {
        Integers::with_config(self.int_factor.clone())
    }

    pub fn header(&self) -> Value {
        json!({
            "ring": self.ring_tag,
            "format": if self.json { "json" } else { "text" },
            "seed": self.seed,
            "jobs": self.jobs,
            "scan_cap": self.generator.scan_cap,
            "residue_cap": self.generator.residue_cap,
            "trial_bound": self.int_factor.trial_bound,
            "rho_iterations": self.int_factor.rho_iterations,
            "degree_cap": self.factor_q.degree_cap,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_selectors() {
        assert_eq!(RingSel::parse("z").unwrap(), RingSel::Z);
        assert_eq!(RingSel::parse("fpt:3").unwrap(), RingSel::Fpt(3));
        assert_eq!(RingSel::parse("zloc:5").unwrap(), RingSel::Zloc(5));
        assert!(RingSel::parse("q").is_err());
        assert!(RingSel::parse("fpt:x").is_err());
    }
}
