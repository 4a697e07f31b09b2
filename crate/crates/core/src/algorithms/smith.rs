//! Smith (1962): normalize by `r = d/c` or `r = c/d`, whichever is at most
//! one in magnitude, so `c² + d²` is never formed.

use crate::fpkit::Complex64;

/// Intermediates of one Smith division, for failure analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmithTrace {
    /// `true` when `|d| <= |c|`.
    pub real_dominant: bool,
    pub r: f64,
    pub den: f64,
}

pub fn divide(x: Complex64, y: Complex64) -> Complex64 {
    divide_traced(x, y).0
}

pub fn divide_traced(x: Complex64, y: Complex64) -> (Complex64, SmithTrace) {
    let (a, b, c, d) = (x.re, x.im, y.re, y.im);
    if d.abs() <= c.abs() {
        let r = d / c;
        let den = c + d * r;
        let e = (a + b * r) / den;
        let f = (b - a * r) / den;
        (
            Complex64::new(e, f),
            SmithTrace {
                real_dominant: true,
                r,
                den,
            },
        )
    } else {
        let r = c / d;
        let den = c * r + d;
        let e = (a * r + b) / den;
        let f = (b * r - a) / den;
        (
            Complex64::new(e, f),
            SmithTrace {
                real_dominant: false,
                r,
                den,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpkit::pow2;

    #[test]
    fn underflowing_ratio_loses_imaginary_part() {
        let x = Complex64::new(pow2(1023), pow2(-1023));
        let y = Complex64::new(pow2(677), pow2(-677));
        let (z, trace) = divide_traced(x, y);
        assert!(trace.real_dominant);
        assert_eq!(trace.r, 0.0);
        assert_eq!(trace.den, pow2(677));
        assert_eq!(z.re, pow2(346));
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn handles_small_denominator() {
        let z = divide(
            Complex64::new(1.0, 1.0),
            Complex64::new(pow2(-1023), pow2(-1023)),
        );
        assert!(z.bit_eq(Complex64::new(pow2(1023), 0.0)));
    }

    #[test]
    fn zero_numerator() {
        let z = divide(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        assert!(z.bit_eq(Complex64::new(0.0, 0.0)));
    }
}
