//! Exact computation with MV-algebras, their enveloping unital ℓ-groups,
//! states and probability maps between MV-algebras.
//!
//! All arithmetic is exact. The linear algebra and piecewise-linear code is
//! generic over [`exact::Scalar`]; the algebra layer fixes [`Rat`].

pub mod error;
pub mod exact;
pub mod gamma;
pub mod json;
pub mod mcnaughton;
pub mod mv;
pub mod probmaps;
pub mod spectra;
pub mod term;

pub use error::{Error, Result};

use rand::SeedableRng;

/// Arbitrary-precision rational.
pub type Rat = num_rational::BigRational;
pub type RatVec = Vec<Rat>;
pub type RatMat = exact::Matrix<Rat>;
pub type RatPolytope = exact::Polytope<Rat>;
pub type PwlFn = mcnaughton::Pwl<Rat>;

/// Generator behind every sampled check; seeded runs are reproducible.
pub type Rng = rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}
