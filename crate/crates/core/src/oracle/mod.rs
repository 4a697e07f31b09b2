//! Correctly-rounded reference division.
//!
//! The quotient `(ac + bd)/(c² + d²) + i(bc − ad)/(c² + d²)` is evaluated
//! exactly over the rationals and each part is rounded once to binary64.

mod rational;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

pub(crate) use rational::ceil_log2_parts;
pub(crate) use rational::ratio_to_f64;
use rational::ratio_to_f64_via;
pub use rational::{scaled_integer, ExactRational, SCALE_EXP};

use crate::error::{Error, Result};
use crate::fpkit::Complex64;

/// Significand width of the x87 double-extended format.
pub const EXTENDED_PRECISION: u32 = 64;

pub fn round_rational_to_binary64(q: &ExactRational) -> f64 {
    q.to_f64()
}

/// Numerators of both parts of `x / y` and their shared positive
/// denominator, as integers carrying a common power-of-two scale that
/// cancels. The fractions are not reduced.
pub fn quotient_parts(x: Complex64, y: Complex64) -> Result<(BigInt, BigInt, BigUint)> {
    let scaled = |v: f64, what: &str| {
        scaled_integer(v).ok_or_else(|| Error::InvalidOperand(format!("{what} = {v}")))
    };
    let a = scaled(x.re, "re(x)")?;
    let b = scaled(x.im, "im(x)")?;
    let c = scaled(y.re, "re(y)")?;
    let d = scaled(y.im, "im(y)")?;
    // All four carry the same 2^-1074 scale, which cancels in both ratios.
    let den: BigInt = &c * &c + &d * &d;
    let Some(den) = den.to_biguint().filter(|v| !v.is_zero()) else {
        return Err(Error::DivisionByZero);
    };
    Ok((&a * &c + &b * &d, &b * &c - &a * &d, den))
}

/// Exact real and imaginary parts of `x / y`.
pub fn exact_quotient(x: Complex64, y: Complex64) -> Result<(ExactRational, ExactRational)> {
    let (re, im, den) = quotient_parts(x, y)?;
    Ok((
        ExactRational::new(re, den.clone()).expect("nonzero"),
        ExactRational::new(im, den).expect("nonzero"),
    ))
}

/// `x / y` with each part correctly rounded (nearest, ties to even).
pub fn oracle_divide(x: Complex64, y: Complex64) -> Result<Complex64> {
    let (re, im, den) = quotient_parts(x, y)?;
    Ok(Complex64::new(
        ratio_to_f64(&re, &den),
        ratio_to_f64(&im, &den),
    ))
}

/// `x / y` rounded first to a 64-bit significand with unbounded exponent,
/// then to binary64.
///
/// This models a quotient computed in x87 double-extended registers and
/// stored to a double. It differs from [`oracle_divide`] only where the
/// double rounding lands on a binary64 tie, most visibly for results just
/// above `alpha / 2` in magnitude.
pub fn extended_divide(x: Complex64, y: Complex64) -> Result<Complex64> {
    let (re, im, den) = quotient_parts(x, y)?;
    let p = Some(EXTENDED_PRECISION);
    Ok(Complex64::new(
        ratio_to_f64_via(&re, &den, p),
        ratio_to_f64_via(&im, &den, p),
    ))
}

/// Which reference quotient an experiment scores against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    #[default]
    CorrectlyRounded,
    Extended,
}

impl Reference {
    pub fn divide(self, x: Complex64, y: Complex64) -> Result<Complex64> {
        match self {
            Reference::CorrectlyRounded => oracle_divide(x, y),
            Reference::Extended => extended_divide(x, y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Reference::CorrectlyRounded => "exact",
            Reference::Extended => "extended",
        }
    }
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reference {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Reference::CorrectlyRounded),
            "extended" => Ok(Reference::Extended),
            other => Err(Error::InvalidArgument(format!(
                "unknown reference {other:?} (expected `exact` or `extended`)"
            ))),
        }
    }
}
