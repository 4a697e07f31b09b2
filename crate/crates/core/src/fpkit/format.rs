//! Binary64 format parameters and exact power-of-two helpers.

/// Parameters of a binary floating-point format.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatFormat {
    pub radix: u32,
    /// Significand precision in bits, including the hidden bit.
    pub precision: u32,
    pub exponent_bits: u32,
    pub e_min: i32,
    pub e_max: i32,
    /// Largest finite value, `(2 - eps) * 2^e_max`.
    pub omega: f64,
    /// Smallest positive normal, `2^e_min`.
    pub mu: f64,
    /// Smallest positive subnormal, `2^(e_min - precision + 1)`.
    pub alpha: f64,
    /// Machine epsilon, the gap between 1 and the next representable value.
    pub eps: f64,
    /// Unit roundoff, `eps / 2`.
    pub unit_roundoff: f64,
}

pub const BINARY64: FloatFormat = FloatFormat {
    radix: 2,
    precision: 53,
    exponent_bits: 11,
    e_min: -1022,
    e_max: 1023,
    omega: f64::MAX,
    mu: f64::MIN_POSITIVE,
    alpha: ALPHA,
    eps: f64::EPSILON,
    unit_roundoff: f64::EPSILON / 2.0,
};

pub const OMEGA: f64 = f64::MAX;
pub const MU: f64 = f64::MIN_POSITIVE;
pub const ALPHA: f64 = f64::from_bits(1);
pub const EPS: f64 = f64::EPSILON;

const EXP_MASK: u64 = 0x7ff0_0000_0000_0000;
const FRAC_MASK: u64 = 0x000f_ffff_ffff_ffff;

/// `2^n` for `n` in `[-1074, 1023]`; panics outside that range.
pub const fn pow2(n: i32) -> f64 {
    assert!(n >= -1074 && n <= 1023, "2^n not representable");
    if n >= -1022 {
        f64::from_bits(((n + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (n + 1074))
    }
}

/// `floor(log2(|x|))` for finite nonzero `x`, subnormals included.
pub fn exponent(x: f64) -> Option<i32> {
    if x == 0.0 || !x.is_finite() {
        return None;
    }
    let bits = x.to_bits();
    let biased = ((bits & EXP_MASK) >> 52) as i32;
    if biased != 0 {
        Some(biased - 1023)
    } else {
        let frac = bits & FRAC_MASK;
        Some(63 - frac.leading_zeros() as i32 - 1074)
    }
}

/// Significand of `|x|` scaled into `[1, 2)`, for finite nonzero `x`.
pub fn significand(x: f64) -> Option<f64> {
    let e = exponent(x)?;
    Some(scalbn(x.abs(), -e))
}

/// C `logb`: the unbiased exponent as a float, `-Inf` for zero, `+Inf` for
/// infinities, NaN for NaN.
pub fn logb(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x.is_infinite() {
        return f64::INFINITY;
    }
    match exponent(x) {
        Some(e) => e as f64,
        None => f64::NEG_INFINITY,
    }
}

/// C `scalbn`: `x * 2^n` with a single rounding.
pub fn scalbn(x: f64, mut n: i32) -> f64 {
    let mut y = x;
    if n > 1023 {
        y *= pow2(1023);
        n -= 1023;
        if n > 1023 {
            y *= pow2(1023);
            n -= 1023;
            if n > 1023 {
                n = 1023;
            }
        }
    } else if n < -1022 {
        // Keep the last step below 2^-53 so a subnormal result is rounded
        // only once.
        y *= pow2(-1022) * pow2(53);
        n += 1022 - 53;
        if n < -1022 {
            y *= pow2(-1022) * pow2(53);
            n += 1022 - 53;
            if n < -1022 {
                n = -1022;
            }
        }
    }
    y * pow2(n)
}

/// True when `x` is `±2^k` for some `k`, subnormal powers included.
pub fn is_power_of_two(x: f64) -> bool {
    significand(x) == Some(1.0)
}
