//! Hexadecimal floating-point literals (`0x1.8p-3`), the bit-exact text
//! form used by the corpus files and the command line.

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Zero};
use serde::Serializer;

use super::format::exponent;
use crate::error::{Error, Result};
use crate::oracle::ExactRational;

const FRAC_MASK: u64 = 0x000f_ffff_ffff_ffff;

/// Formats `x` as a normalized hex-float literal.
///
/// Subnormals are normalized too (`2^-1074` prints as `0x1p-1074`), zero
/// prints as `0x0p0` and the fraction is omitted when it is zero.
pub fn format_hexfloat(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_owned();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let Some(e) = exponent(x) else {
        return format!("{sign}0x0p0");
    };
    let bits = x.to_bits();
    let frac = if bits & 0x7ff0_0000_0000_0000 != 0 {
        bits & FRAC_MASK
    } else {
        let m = bits & FRAC_MASK;
        let top = 63 - m.leading_zeros();
        (m << (52 - top)) & FRAC_MASK
    };
    if frac == 0 {
        return format!("{sign}0x1p{e}");
    }
    let digits = format!("{frac:013x}");
    format!("{sign}0x1.{}p{e}", digits.trim_end_matches('0'))
}

/// Parses a hex-float literal, or `inf` / `infinity` / `nan` with an
/// optional sign. Literals with more precision than binary64 are rounded to
/// nearest, ties to even.
pub fn parse_hexfloat(text: &str) -> Result<f64> {
    let err = |reason: String| Error::Parse {
        token: text.to_owned(),
        reason,
    };
    let s = text.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let signed = |v: f64| if negative { -v } else { v };

    let lower = body.to_ascii_lowercase();
    match lower.as_str() {
        "inf" | "infinity" => return Ok(signed(f64::INFINITY)),
        "nan" => return Ok(f64::NAN),
        _ => {}
    }
    let rest = lower
        .strip_prefix("0x")
        .ok_or_else(|| err("expected `0x` prefix".into()))?;

    let (mantissa_text, exp_text) = match rest.split_once('p') {
        Some((m, e)) => (m, Some(e)),
        None => (rest, None),
    };
    let (int_digits, frac_digits) = match mantissa_text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa_text, ""),
    };
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(err("no hexadecimal digits".into()));
    }

    let mut mantissa = BigUint::zero();
    for ch in int_digits.chars().chain(frac_digits.chars()) {
        let digit = ch
            .to_digit(16)
            .ok_or_else(|| err(format!("unexpected character {ch:?} in significand")))?;
        mantissa = (mantissa << 4u32) + digit;
    }

    let exp: i64 = match exp_text {
        None => 0,
        Some("") => return Err(err("missing exponent after `p`".into())),
        Some(e) => e.parse().map_err(|_| err(format!("bad exponent {e:?}")))?,
    };
    let frac_len = i64::try_from(frac_digits.len()).map_err(|_| err("too long".into()))?;
    let scale = exp
        .checked_sub(4 * frac_len)
        .ok_or_else(|| err("exponent out of range".into()))?;

    if mantissa.is_zero() {
        return Ok(signed(0.0));
    }
    // Anything this far outside the binary64 range rounds to zero or Inf
    // without needing the exact value.
    let magnitude = scale.saturating_add(mantissa.bits() as i64);
    if magnitude > 1100 {
        return Ok(signed(f64::INFINITY));
    }
    if magnitude < -1100 {
        return Ok(signed(0.0));
    }
    let q = ExactRational::from_scaled_integer(mantissa.into(), scale as i32);
    Ok(signed(q.to_f64()))
}

/// A parsed operand and whether the literal denotes that binary64 value
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsedLiteral {
    pub value: f64,
    pub exact: bool,
}

/// Parses either a hex-float literal or a plain decimal (`0.1`, `-2.5e-3`).
/// Decimal input is rounded to nearest; `exact` reports whether rounding
/// changed the value.
pub fn parse_literal(text: &str) -> Result<ParsedLiteral> {
    let s = text.trim();
    let body = s.trim_start_matches(['+', '-']);
    let lower = body.to_ascii_lowercase();
    if lower.starts_with("0x") || matches!(lower.as_str(), "inf" | "infinity" | "nan") {
        return parse_hexfloat(s).map(|value| ParsedLiteral { value, exact: true });
    }
    let value: f64 = s.parse().map_err(|_| Error::Parse {
        token: text.to_owned(),
        reason: "neither a hex-float nor a decimal literal".into(),
    })?;
    let exact = value.is_finite()
        && decimal_rational(s).is_some_and(|q| ExactRational::from_f64(value) == Some(q));
    Ok(ParsedLiteral { value, exact })
}

/// Exact value of a decimal literal accepted by `str::parse::<f64>`.
fn decimal_rational(s: &str) -> Option<ExactRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let exp10 = exp.checked_sub(i64::try_from(frac.len()).ok()?)?;
    // Values this far out of range are never exactly representable anyway.
    if exp10.unsigned_abs() > 5000 {
        return None;
    }
    let power = BigUint::from(10u32).pow(exp10.unsigned_abs() as u32);
    let digits = if negative { -digits } else { digits };
    if exp10 >= 0 {
        Some(ExactRational::from_integer(digits * BigInt::from(power)))
    } else {
        ExactRational::new(digits, power)
    }
}

/// `serialize_with` adapter writing a binary64 field as a hex-float string.
pub fn serialize_hex<S: Serializer>(
    x: &f64,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_hexfloat(*x))
}
