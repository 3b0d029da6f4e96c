//! Exact rational scalars: parsing, formatting, and the closed-form
//! constants the asymptotic reports need.
//!
//! Everything is built on `num`'s `BigRational`, which keeps values in
//! lowest terms with a positive denominator. No floating point enters any
//! computation; decimal output is produced by exact long division at
//! rendering time only.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar; every series coefficient is one of these.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRatError(pub String);

/// Small rational shorthand. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Small integer as a rational.
pub fn int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

/// Parse `"p/q"` or `"p"` with arbitrary-precision parts.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(text.to_owned());
    let mut parts = text.splitn(2, '/');
    let numer: BigInt = parts.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
    match parts.next() {
        None => Ok(Rat::from_integer(numer)),
        Some(den) => {
            let denom: BigInt = den.trim().parse().map_err(|_| err())?;
            if denom.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Render as `"p/q"`, omitting `/q` when the denominator is one.
pub fn format_rat(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// (2n−1)!! as an exact big integer; the empty product (n = 0) is 1.
pub fn double_factorial_odd(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 1..=n {
        acc *= BigInt::from(2 * k as u64 - 1);
    }
    acc
}

/// Exact rational approximation of 1/e, as the alternating factorial sum
/// truncated at k = 60. The tail is below 10^-80, far beyond the 30-digit
/// report precision.
pub fn inv_e() -> Rat {
    let mut sum = Rat::zero();
    let mut factorial = BigInt::one();
    for k in 0..=60u64 {
        if k > 0 {
            factorial *= BigInt::from(k);
        }
        let term = Rat::new(BigInt::one(), factorial.clone());
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Fixed-point decimal rendering with `digits` fractional digits, rounding
/// half away from zero.
pub fn decimal_string(value: &Rat, digits: usize) -> String {
    let sign = if value.is_negative() { "-" } else { "" };
    let scale = num::pow(BigInt::from(10), digits);
    let scaled = value.abs() * Rat::from_integer(scale.clone());
    let (mut quo, rem) = (
        scaled.numer() / scaled.denom(),
        scaled.numer() % scaled.denom(),
    );
    if &rem * 2 >= *scaled.denom() {
        quo += 1;
    }
    let int_part = &quo / &scale;
    let frac_part = &quo % &scale;
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}
