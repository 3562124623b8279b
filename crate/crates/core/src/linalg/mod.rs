//! Exact rational linear algebra.

mod elim;
mod matrix;
mod poly;
mod sample;

pub use elim::{nullspace_basis, rank_exact, rank_gauss_jordan};
pub use matrix::{rat, ratio, RatMatrix};
pub use poly::{char_poly, q_of, RatPoly};
pub use sample::{in_s, in_sbar0, sample_in_s, DEFAULT_SAMPLE_BOUND};

/// Reduced arbitrary-precision rational with positive denominator.
pub type Rat = num_rational::BigRational;
