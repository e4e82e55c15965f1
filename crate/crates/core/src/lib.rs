//! Genus-4 curves over finite fields with point counts near the Weil–Serre
//! bound, and the arithmetic they are built from.
//!
//! The layers, bottom up: [`field`] and [`poly`] for finite-field and
//! polynomial arithmetic; [`elliptic`], [`genus2`] and [`classgroup`] for the
//! curves and class numbers; [`genus4`] for the double-cover family and the
//! search pipeline; [`oracle`] for brute-force cross-checks; [`suites`] for
//! the acceptance criteria.

pub mod arith;
pub mod classgroup;
pub mod error;
pub mod field;
pub mod genus2;
pub mod genus4;
pub mod elliptic;
pub mod oracle;
pub mod poly;
pub mod suites;

pub use error::{Error, Result};
pub use field::{Ext, ExtElem, Field, Fq, Gf};
pub use poly::Poly;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG every randomized routine draws from, keyed by a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
