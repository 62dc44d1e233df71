//! Exact-arithmetic toolkit for quantum state identity testing.
//!
//! Everything is computed over arbitrary-precision rationals: success
//! probabilities of permutation-style tests, closed-form optimal-measurement
//! certificates with exact duality gaps, subgroup-test soundness via Kostka
//! numbers and trivial-irrep multiplicities, and the iterated swap tree with
//! both an exact simulator and its recurrence bound.
//!
//! The linear algebra is generic over a [`exact::Scalar`] ring; the concrete
//! instantiation used throughout is the rational alias [`Rat`]. Floating
//! point appears nowhere in any computation or check — decimal renderings
//! are advisory output only.

pub mod analytic;
pub mod checks;
pub mod error;
pub mod exact;
pub mod ist;
pub mod partitions;
pub mod sdp;
pub mod symgroup;
pub mod tensor;

pub use error::{Error, Result};

/// Arbitrary-precision rational scalar: always in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Dense rational matrix, the workhorse of every operator computation.
pub type Mat = exact::Matrix<Rat>;
