//! Independent re-checks and empirical scanners.
//!
//! Nothing here calls into the generator's search: certificates are
//! recomputed with a plain Euclid loop and valuation by repeated division.

mod locunit;
mod scan;
mod swan;
mod verify;

pub use locunit::{locunit_demo, LocUnitReport, LocUnitSample};
pub use scan::{fpt_up_to, int_range, scan_primes, scan_squarefree, ScanReport};
pub use swan::{swan_demo, swan_demo_seeded, SwanEntry, SwanReport};
pub use verify::{
    euclid_gcd, mutations, valuation_by_division, verify_certificate, verify_stream, Verification,
};
