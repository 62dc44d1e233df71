//! Scalar trait bound and helpers for the rational instantiation.
//!
//! The linear algebra in this crate is generic over a [`Scalar`] ring, but
//! every contract that certifies positivity or equality assumes the scalar
//! is an exact field. The crate root exports [`crate::Rat`] (an
//! arbitrary-precision rational, always reduced, denominator positive) as
//! the instantiation used throughout.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed};
use std::fmt;

use crate::error::{Error, Result};
use crate::Rat;

/// Ring of scalars the dense matrix type works over.
///
/// Certificates (PSD factorization, consistent solves) are only sound when
/// arithmetic in `Self` is exact.
pub trait Scalar:
    Num + Signed + PartialOrd + Clone + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num
        + Signed
        + PartialOrd
        + Clone
        + FromPrimitive
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Rational p/q from machine integers. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer value.
pub fn rat_int(k: impl Into<BigInt>) -> Rat {
    Rat::from_integer(k.into())
}

/// Rational from an unsigned count.
pub fn rat_u(k: u64) -> Rat {
    Rat::from_integer(BigInt::from(k))
}

/// Parses `"p/q"` or a bare integer `"p"`. Whitespace is not accepted.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = |m: &str| Error::Parse(format!("invalid rational {s:?}: {m}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.parse().map_err(|_| bad("bad numerator"))?;
            let den: BigInt = q.parse().map_err(|_| bad("bad denominator"))?;
            if den == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().map_err(|_| bad("bad integer"))?;
            Ok(Rat::from_integer(num))
        }
    }
}

/// Renders a rational as `"p/q"` in lowest terms with positive denominator,
/// e.g. `"3/4"`, `"-1/8"`, `"0/1"`.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Approximate decimal value. Advisory only; never used in any check.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    // Falls back to string conversion for values beyond f64 integer range.
    let n = i128::try_from(numer.clone())
        .map(|v| v as f64)
        .unwrap_or_else(|_| numer.to_string().parse().unwrap_or(f64::NAN));
    let d = i128::try_from(denom.clone())
        .map(|v| v as f64)
        .unwrap_or_else(|_| denom.to_string().parse().unwrap_or(f64::NAN));
    n / d
}

/// Serde adapter: rationals serialize as `"p/q"` strings.
pub fn serialize_rat<S: serde::Serializer>(r: &Rat, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format_rat(r))
}

/// Serde adapter for `Option<Rat>`.
pub fn serialize_opt_rat<S: serde::Serializer>(
    r: &Option<Rat>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => ser.serialize_some(&format_rat(v)),
        None => ser.serialize_none(),
    }
}
