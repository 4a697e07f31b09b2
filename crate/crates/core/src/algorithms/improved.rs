//! Smith's algorithm with a reciprocal denominator and a second branch for
//! an underflowed ratio.
//!
//! With `|d| <= |c|`, `r = d/c` and `t = 1/(c + d·r)`:
//!
//! * `r != 0`: `e = (a + b·r)·t`, `f = (b − a·r)·t`
//! * `r == 0`: `e = (a + d·(b/c))·t`, `f = (b − d·(a/c))·t`
//!
//! When `r` underflows the products `b·r` and `a·r` are re-associated as
//! `d·(b/c)` and `d·(a/c)`. The third association `(d·b)/c` never helps:
//! if both `d/c` and `b/c` are below the smallest subnormal then so is
//! `bd/c` (see `experiments::proposition`).

use crate::fpkit::Complex64;

pub fn divide(x: Complex64, y: Complex64) -> Complex64 {
    let (a, b, c, d) = (x.re, x.im, y.re, y.im);
    if d.abs() <= c.abs() {
        let (e, f) = internal(a, b, c, d);
        Complex64::new(e, f)
    } else {
        let (e, f) = internal(b, a, d, c);
        Complex64::new(e, -f)
    }
}

#[inline]
fn internal(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    let r = d / c;
    let t = 1.0 / (c + d * r);
    if r != 0.0 {
        ((a + b * r) * t, (b - a * r) * t)
    } else {
        ((a + d * (b / c)) * t, (b - d * (a / c)) * t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpkit::pow2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn recovers_smith_failure() {
        let z = divide(c(pow2(1023), pow2(-1023)), c(pow2(677), pow2(-677)));
        assert!(z.bit_eq(c(pow2(346), -pow2(-1008))));
    }

    #[test]
    fn sum_overflow_remains() {
        let z = divide(c(pow2(1023), pow2(1023)), c(1.0, 1.0));
        assert_eq!(z.re, f64::INFINITY);
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn reciprocal_overflow_remains() {
        let z = divide(c(pow2(-347), pow2(-54)), c(pow2(-1037), pow2(-1058)));
        assert_eq!(z.re, f64::INFINITY);
        assert_eq!(z.im, f64::INFINITY);
    }

    #[test]
    fn simple_quotients() {
        assert!(divide(c(2.0, 0.0), c(2.0, 0.0)).bit_eq(c(1.0, 0.0)));
        assert!(divide(c(4.0, 2.0), c(1.0, 1.0)).bit_eq(c(3.0, -1.0)));
        assert!(divide(c(2.0, 4.0), c(1.0, 1.0)).bit_eq(c(3.0, 1.0)));
        assert!(divide(c(-4.0, 2.0), c(0.0, 2.0)).bit_eq(c(1.0, 2.0)));
    }
}
