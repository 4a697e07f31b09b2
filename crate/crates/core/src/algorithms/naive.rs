//! Textbook formula, evaluated left to right.

use crate::fpkit::Complex64;

pub fn divide(x: Complex64, y: Complex64) -> Complex64 {
    let (a, b, c, d) = (x.re, x.im, y.re, y.im);
    let den = c * c + d * d;
    let e = (a * c + b * d) / den;
    let f = (b * c - a * d) / den;
    Complex64::new(e, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpkit::pow2;

    #[test]
    fn denominator_overflow_gives_zero() {
        let z = divide(Complex64::new(1.0, 1.0), Complex64::new(1.0, pow2(1023)));
        assert_eq!((z.re, z.im), (0.0, 0.0));
    }

    #[test]
    fn denominator_underflow_gives_inf_nan() {
        let z = divide(
            Complex64::new(1.0, 1.0),
            Complex64::new(pow2(-1023), pow2(-1023)),
        );
        assert_eq!(z.re, f64::INFINITY);
        assert!(z.im.is_nan());
    }

    #[test]
    fn small_integers_are_exact() {
        let z = divide(Complex64::new(6.0, 8.0), Complex64::new(3.0, 4.0));
        assert!(z.bit_eq(Complex64::new(2.0, 0.0)));
    }
}
