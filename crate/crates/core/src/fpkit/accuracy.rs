//! Bits-of-accuracy scoring of a computed value against a reference.

use std::fmt;

use serde::{Serialize, Serializer};

use super::complex::Complex64;
use super::hexfloat::serialize_hex;
use crate::error::{Error, Result};
use crate::oracle::{ceil_log2_parts, ratio_to_f64, scaled_integer};

/// Number of significand bits in binary64, the best possible score.
pub const MAX_BITS: u32 = 53;

/// Relative error of a computed value; `Exact` when it equals the reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelErr {
    Exact,
    Value(f64),
}

impl RelErr {
    pub fn as_f64(self) -> f64 {
        match self {
            RelErr::Exact => 0.0,
            RelErr::Value(v) => v,
        }
    }
}

/// `"exact"` or the relative error as a hex-float string.
impl Serialize for RelErr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RelErr::Exact => serializer.serialize_str("exact"),
            RelErr::Value(v) => serialize_hex(v, serializer),
        }
    }
}

impl fmt::Display for RelErr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelErr::Exact => f.write_str("exact"),
            RelErr::Value(v) => write!(f, "{v:e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AccuracyResult {
    pub re_bits: u32,
    pub im_bits: u32,
    pub min_bits: u32,
    pub re_relerr: RelErr,
    pub im_relerr: RelErr,
}

/// Scores `computed` against `expected` as `clamp(floor(-log2(relerr)), 0, 53)`.
///
/// Equal values (with `+0 == -0` and same-signed infinities equal) score 53.
/// A nonzero result for a zero reference, any mismatch against an infinite
/// reference, and a NaN or infinite result for a finite reference all score
/// 0 with an infinite relative error. The relative error itself is
/// evaluated exactly, so scores never suffer from rounding in the metric.
pub fn bits_of_accuracy(computed: f64, expected: f64) -> Result<(u32, RelErr)> {
    if expected.is_nan() {
        return Err(Error::InvalidReference("expected value is NaN".into()));
    }
    if computed == expected {
        return Ok((MAX_BITS, RelErr::Exact));
    }
    if expected == 0.0 || expected.is_infinite() || !computed.is_finite() {
        return Ok((0, RelErr::Value(f64::INFINITY)));
    }
    // Both values are integers in units of 2^-1074, so the relative error
    // is the plain ratio |C - E| / |E|.
    let c = scaled_integer(computed).expect("finite");
    let e = scaled_integer(expected).expect("finite");
    let diff = (c - &e).into_parts().1;
    let e = e.into_parts().1;
    // floor(-log2 q) == -ceil(log2 q)
    let bits = (-ceil_log2_parts(&diff, &e)).clamp(0, MAX_BITS as i64) as u32;
    let relerr = ratio_to_f64(&diff.into(), &e);
    Ok((bits, RelErr::Value(relerr)))
}

/// Per-component accuracy; the complex score is the worse of the two parts.
pub fn complex_accuracy(computed: Complex64, expected: Complex64) -> Result<AccuracyResult> {
    let (re_bits, re_relerr) = bits_of_accuracy(computed.re, expected.re)?;
    let (im_bits, im_relerr) = bits_of_accuracy(computed.im, expected.im)?;
    Ok(AccuracyResult {
        re_bits,
        im_bits,
        min_bits: re_bits.min(im_bits),
        re_relerr,
        im_relerr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpkit::format::pow2;
    use proptest::prelude::*;

    #[test]
    fn identical_values_are_exact() {
        assert_eq!(
            bits_of_accuracy(pow2(346), pow2(346)).unwrap(),
            (53, RelErr::Exact)
        );
        assert_eq!(bits_of_accuracy(-0.0, 0.0).unwrap(), (53, RelErr::Exact));
        assert_eq!(
            bits_of_accuracy(f64::INFINITY, f64::INFINITY).unwrap(),
            (53, RelErr::Exact)
        );
    }

    #[test]
    fn flushed_subnormal_scores_zero() {
        assert_eq!(
            bits_of_accuracy(0.0, pow2(-1008)).unwrap(),
            (0, RelErr::Value(1.0))
        );
        assert_eq!(
            bits_of_accuracy(pow2(-1008), 0.0).unwrap(),
            (0, RelErr::Value(f64::INFINITY))
        );
    }

    #[test]
    fn one_ulp_off_near_point_six() {
        // Exact relative error: 2^-53 / fl(0.6), whose -log2 is about 52.26.
        let (bits, rel) = bits_of_accuracy(0.6000000000000001, 0.6).unwrap();
        assert_eq!(bits, 52);
        assert!((rel.as_f64() - 1.850371707708594e-16).abs() < 1e-30);
    }

    #[test]
    fn non_finite_results() {
        assert_eq!(bits_of_accuracy(f64::NAN, 1.0).unwrap().0, 0);
        assert_eq!(bits_of_accuracy(f64::INFINITY, 1.0).unwrap().0, 0);
        assert_eq!(bits_of_accuracy(f64::MAX, f64::INFINITY).unwrap().0, 0);
        assert_eq!(
            bits_of_accuracy(f64::NEG_INFINITY, f64::INFINITY)
                .unwrap()
                .0,
            0
        );
        assert!(matches!(
            bits_of_accuracy(1.0, f64::NAN),
            Err(Error::InvalidReference(_))
        ));
    }

    #[test]
    fn power_of_two_errors_hit_exact_boundaries() {
        // relerr exactly 2^-k scores k; anything larger scores k-1.
        assert_eq!(bits_of_accuracy(1.5, 1.0).unwrap().0, 1);
        assert_eq!(bits_of_accuracy(2.0, 1.0).unwrap().0, 0);
        assert_eq!(bits_of_accuracy(1.0 + f64::EPSILON, 1.0).unwrap().0, 52);
        assert_eq!(bits_of_accuracy(3.0, 1.0).unwrap().0, 0);
    }

    #[test]
    fn complex_takes_worst_part() {
        let expected = Complex64::new(pow2(-1023), -pow2(-1023));
        assert_eq!(complex_accuracy(expected, expected).unwrap().min_bits, 53);

        let z3 = Complex64::new(pow2(346), -pow2(-1008));
        let smith = Complex64::new(1.43e104, 0.0);
        let acc = complex_accuracy(smith, z3).unwrap();
        assert_eq!((acc.im_bits, acc.min_bits), (0, 0));

        // One ulp above a normal power of two is a relative error of 2^-52.
        let near = Complex64::new(z3.re.next_up(), z3.im);
        let acc = complex_accuracy(near, z3).unwrap();
        assert_eq!((acc.re_bits, acc.im_bits, acc.min_bits), (52, 53, 52));
        let near = Complex64::new(z3.re, z3.im.next_down());
        assert_eq!(complex_accuracy(near, z3).unwrap().min_bits, 52);

        // Subnormal references have coarser ulps.
        let sub = Complex64::new(expected.re.next_up(), expected.im);
        assert_eq!(complex_accuracy(sub, expected).unwrap().min_bits, 51);
    }

    proptest! {
        #[test]
        fn symmetric_under_negation(c in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL,
                                    e in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
            prop_assert_eq!(bits_of_accuracy(c, e).unwrap(), bits_of_accuracy(-c, -e).unwrap());
        }

        #[test]
        fn widening_error_never_gains_bits(e in proptest::num::f64::NORMAL) {
            let mut prev = MAX_BITS;
            for k in (1..=52).rev() {
                let perturbed = e * (1.0 + pow2(-k));
                let (bits, _) = bits_of_accuracy(perturbed, e).unwrap();
                prop_assert!(bits <= prev);
                prev = bits;
            }
            prop_assert_eq!(bits_of_accuracy(e, e).unwrap().0, MAX_BITS);
        }
    }
}
