//! Scalar field abstraction.
//!
//! Every tensor in the crate is generic over [`Field`]. Verification runs on
//! [`BigRational`], where every identity is a zero-residual equality. The
//! `f64` instance exists for quick numerical exploration and display; it is
//! never used to certify anything.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, Zero};

use crate::error::{Error, Result};

/// A scalar field the geometry kernels can run over.
pub trait Field:
    Num + Signed + FromPrimitive + Clone + Debug + Display + PartialOrd + Send + Sync + 'static
{
    /// Exact zero for rationals; a small absolute tolerance for floats.
    fn is_negligible(&self) -> bool;

    /// Square root when it exists in the field.
    ///
    /// Rationals only have one for perfect squares `p²/q²`.
    fn sqrt_exact(&self) -> Option<Self>;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer).expect("integer literal") / Self::from_i64(denom).expect("integer literal")
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn two() -> Self {
        Self::from_i64(2).expect("integer literal")
    }
}

impl Field for BigRational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
}

impl Field for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }

    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

/// Builds `p/q` from machine integers.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds an integer-valued rational.
pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses a rational literal: `p` or `p/q`, optional leading `-` or `+`.
///
/// Decimal points, exponents and whitespace are rejected so that no
/// floating-point value can enter a descriptor.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational literal: {text:?} (expected \"p\" or \"p/q\")"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = |s: &str, signed: bool| {
        let body = if signed { s.strip_prefix(['-', '+']).unwrap_or(s) } else { s };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(numer, true) || denom.is_some_and(|d| !digits(d, false)) {
        return Err(bad());
    }
    let numer = BigInt::from_str_radix(numer.trim_start_matches('+'), 10).map_err(|_| bad())?;
    let denom = match denom {
        Some(d) => BigInt::from_str_radix(d, 10).map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Canonical string form used in every report: `p` or `p/q`.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}
