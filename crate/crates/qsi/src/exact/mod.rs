//! Exact scalars, dense matrices, and PSD certificates.

pub mod matrix;
pub mod psd;
pub mod scalar;

pub use matrix::{hs_inner, solve_consistent, Matrix};
pub use psd::{psd_certificate, PsdCertificate, Verdict};
pub use scalar::{format_rat, parse_rat, rat, rat_int, rat_to_f64, rat_u, Scalar};
