//! Priest (2004): scale the denominator by a power of two `s` close to
//! `|c + id|^(-3/4)`, found with integer arithmetic on the exponent field,
//! then evaluate the textbook formula on the scaled values:
//!
//! ```text
//! c' = c·s, d' = d·s, t = 1/(c'² + d'²), c'' = c'·s, d'' = d'·s
//! e = (a·c'' + b·d'')·t,  f = (b·c'' − a·d'')·t
//! ```
//!
//! which is `x·conj(y)·s² / (s²|y|²)`. The four multiplications by `s` are
//! exact whenever they do not underflow.

use crate::fpkit::{exponent, pow2, Complex64};

/// Exponent of the scale factor for a denominator whose larger component
/// has binary exponent `k`: `-(floor(3k/4) + 1)`.
pub fn scale_exponent(k: i32) -> i32 {
    -((3 * k).div_euclid(4) + 1)
}

pub fn divide(x: Complex64, y: Complex64) -> Complex64 {
    let (a, b) = (x.re, x.im);
    let (mut c, mut d) = (y.re, y.im);
    // Zero, infinite or NaN denominators go through unscaled.
    let s = match exponent(c.abs().max(d.abs())) {
        Some(k) => pow2(scale_exponent(k)),
        None => 1.0,
    };
    c *= s;
    d *= s;
    let t = 1.0 / (c * c + d * d);
    c *= s;
    d *= s;
    let e = (a * c + b * d) * t;
    let f = (b * c - a * d) * t;
    Complex64::new(e, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_tracks_three_quarter_power() {
        assert_eq!(scale_exponent(0), -1);
        assert_eq!(scale_exponent(4), -4);
        assert_eq!(scale_exponent(-4), 2);
        assert_eq!(scale_exponent(1023), -768);
        assert_eq!(scale_exponent(-1074), 805);
        for k in -1074..=1023 {
            let s = scale_exponent(k);
            assert!((f64::from(s) + 0.75 * f64::from(k)).abs() <= 1.0);
        }
    }

    #[test]
    fn large_numerator_does_not_overflow() {
        let z = divide(
            Complex64::new(pow2(1023), pow2(1023)),
            Complex64::new(1.0, 1.0),
        );
        assert!(z.bit_eq(Complex64::new(pow2(1023), 0.0)));
    }

    #[test]
    fn ordinary_values() {
        let z = divide(Complex64::new(6.0, 8.0), Complex64::new(3.0, 4.0));
        assert!(z.bit_eq(Complex64::new(2.0, 0.0)));
    }

    #[test]
    fn zero_denominator_is_not_scaled() {
        let z = divide(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        assert!(z.re.is_infinite() || z.re.is_nan());
    }
}
