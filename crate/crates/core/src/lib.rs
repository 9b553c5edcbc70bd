//! Integer-valued polynomials over principal ideal domains.
//!
//! The crate decides total primitivity (the gcd of the value set being a
//! unit), computes canonical totally primitive decompositions, and builds
//! certified infinite streams of arguments whose polynomial values are
//! pairwise coprime and carry a prime of multiplicity exactly one.
//!
//! Everything is generic over a [`ring::Pid`] backend: the integers,
//! 𝔽_p[t], or the localization ℤ_(p).
//!
//! ```
//! use totprim::generator::{GeneratorConfig, GeneratorState, ProblemSpec};
//! use totprim::oracle::verify_stream;
//! use totprim::text::parse_poly;
//! use totprim::Integers;
//!
//! # fn main() -> Result<(), totprim::Error> {
//! let ring = Integers::default();
//! let polys = vec![parse_poly(&ring, "x^2+1")?, parse_poly(&ring, "x^2+x+1")?];
//! let spec = ProblemSpec::full(&ring, polys);
//! let mut gen = GeneratorState::new(ring.clone(), spec.clone(), GeneratorConfig::default())?;
//! let certs = gen.take(5)?;
//! assert!(verify_stream(&ring, &spec, &certs).ok());
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod frac;
pub mod generator;
pub mod oracle;
pub mod poly;
pub mod primitivity;
pub mod ring;
pub mod text;

pub use error::Error;
pub use frac::Frac;
pub use poly::FieldPoly;
pub use ring::{FpPolyRing, Integers, Localized, Pid};
