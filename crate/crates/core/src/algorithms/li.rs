//! Li et al.: Smith's algorithm behind an external stage that scales the
//! numerator and the denominator by powers of 16 when their larger
//! component is close to the overflow or underflow threshold.

use crate::fpkit::{Complex64, EPS, MU, OMEGA};

use super::smith;

const BASE: f64 = 16.0;
/// Upscale factor `16 / eps²`.
const UP: f64 = BASE / (EPS * EPS);

pub fn divide(x: Complex64, y: Complex64) -> Complex64 {
    let ab = x.re.abs().max(x.im.abs());
    let cd = y.re.abs().max(y.im.abs());
    let mut x = x;
    let mut y = y;
    let mut s = 1.0;
    if ab >= OMEGA / BASE {
        x = x.scale(1.0 / BASE);
        s *= BASE;
    }
    if cd >= OMEGA / BASE {
        y = y.scale(1.0 / BASE);
        s /= BASE;
    }
    if ab <= MU * BASE / EPS {
        x = x.scale(UP);
        s /= UP;
    }
    if cd <= MU * BASE / EPS {
        y = y.scale(UP);
        s *= UP;
    }
    smith::divide(x, y).scale(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpkit::pow2;

    #[test]
    fn downscaling_prevents_sum_overflow() {
        let z = divide(
            Complex64::new(pow2(1023), pow2(1023)),
            Complex64::new(1.0, 1.0),
        );
        assert!(z.bit_eq(Complex64::new(pow2(1023), 0.0)));
    }

    #[test]
    fn downscaling_loses_tiny_real_part() {
        let x = Complex64::new(pow2(-71), pow2(1021));
        let y = Complex64::new(pow2(1001), pow2(-323));
        let z = divide(x, y);
        assert_eq!(z.re, 0.0);
        assert_eq!(z.im, pow2(20));
    }

    #[test]
    fn unscaled_inputs_match_smith() {
        let x = Complex64::new(1.5, -2.25);
        let y = Complex64::new(0.3, 7.0);
        assert!(divide(x, y).bit_eq(smith::divide(x, y)));
    }
}
