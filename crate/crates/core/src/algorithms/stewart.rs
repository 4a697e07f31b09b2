//! Stewart (1985): Smith's normalization, with every three-factor product
//! `p * d * (1/c)` evaluated in the order that keeps intermediates in range.
//!
//! The `|d| > |c|` case swaps the real and imaginary parts of both operands,
//! which conjugates the quotient, and negates the imaginary result.

use crate::fpkit::Complex64;

pub fn divide(x: Complex64, y: Complex64) -> Complex64 {
    let (a, b, c, d) = (x.re, x.im, y.re, y.im);
    if d.abs() <= c.abs() {
        let (e, f) = kernel(a, b, c, d);
        Complex64::new(e, f)
    } else {
        let (e, f) = kernel(b, a, d, c);
        Complex64::new(e, -f)
    }
}

fn kernel(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    let s = 1.0 / c;
    let r = d / c;
    let t = 1.0 / (c + d * r);
    let e = (a + product3(b, d, s)) * t;
    let f = (b - product3(a, d, s)) * t;
    (e, f)
}

/// `x1 * x2 * x3`, multiplying the largest-magnitude factor by the
/// smallest-magnitude one first. Ties go to the first-listed factor.
pub fn product3(x1: f64, x2: f64, x3: f64) -> f64 {
    let f = [x1, x2, x3];
    let m = [x1.abs(), x2.abs(), x3.abs()];
    let mut hi = 0;
    let mut lo = 0;
    for i in 1..3 {
        if m[i] > m[hi] {
            hi = i;
        }
        if m[i] < m[lo] {
            lo = i;
        }
    }
    if hi == lo {
        lo = (hi + 1) % 3;
    }
    let mid = 3 - hi - lo;
    (f[hi] * f[lo]) * f[mid]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpkit::pow2;

    #[test]
    fn product_order_avoids_underflow() {
        // (2^1023 * 2^-677) * 2^-677 = 2^-331; left to right would give 0.
        assert_eq!(product3(pow2(1023), pow2(-677), pow2(-677)), pow2(-331));
        assert_eq!(product3(pow2(-677), pow2(-677), pow2(1023)), pow2(-331));
        // Left to right overflows here.
        assert_eq!(product3(pow2(1000), pow2(1000), pow2(-1000)), pow2(1000));
        assert_eq!(product3(2.0, 3.0, 5.0), 30.0);
        assert_eq!(product3(2.0, 2.0, 2.0), 8.0);
    }

    #[test]
    fn recovers_smith_failure() {
        let x = Complex64::new(pow2(1023), pow2(-1023));
        let y = Complex64::new(pow2(677), pow2(-677));
        assert!(divide(x, y).bit_eq(Complex64::new(pow2(346), -pow2(-1008))));
    }

    #[test]
    fn swapped_branch() {
        let z = divide(Complex64::new(6.0, 8.0), Complex64::new(4.0, 3.0).conj());
        // (6+8i)/(4-3i) = (24-24 + i(32+18))/25 = 2i
        assert!(z.bit_eq(Complex64::new(0.0, 2.0)));
    }
}
