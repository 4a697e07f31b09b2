//! The robust variant: an external stage that rescales the operands by
//! exact powers of two when they approach the overflow or underflow
//! thresholds, and an internal stage built on the improved algorithm that
//! also handles an underflowing `b·r`.

use crate::fpkit::{Complex64, EPS, MU, OMEGA};

/// Scaling base for the external stage.
pub const B: f64 = 2.0;
/// Upscale factor `B / eps²`.
pub const BE: f64 = B / (EPS * EPS);

/// Back-scaling factor accumulated by the external stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleState {
    /// Power of two the internal quotient is multiplied by.
    pub s: f64,
    pub be: f64,
}

/// External stage: returns the scaled operands and the factor that undoes
/// the scaling on the quotient.
pub fn prescale(x: Complex64, y: Complex64) -> (Complex64, Complex64, ScaleState) {
    let ab = x.re.abs().max(x.im.abs());
    let cd = y.re.abs().max(y.im.abs());
    let (mut x, mut y) = (x, y);
    let mut s = 1.0;
    if ab >= OMEGA / 2.0 {
        x = x.scale(0.5);
        s *= 2.0;
    }
    if cd >= OMEGA / 2.0 {
        y = y.scale(0.5);
        s /= 2.0;
    }
    if ab <= MU * B / EPS {
        x = x.scale(BE);
        s /= BE;
    }
    if cd <= MU * B / EPS {
        y = y.scale(BE);
        s *= BE;
    }
    (x, y, ScaleState { s, be: BE })
}

pub fn divide(x: Complex64, y: Complex64) -> Complex64 {
    let (x, y, scale) = prescale(x, y);
    internal(x, y).scale(scale.s)
}

/// Internal stage, without any rescaling.
pub fn internal(x: Complex64, y: Complex64) -> Complex64 {
    let (a, b, c, d) = (x.re, x.im, y.re, y.im);
    if d.abs() <= c.abs() {
        let (e, f) = subinternal(a, b, c, d);
        Complex64::new(e, f)
    } else {
        let (e, f) = subinternal(b, a, d, c);
        Complex64::new(e, -f)
    }
}

#[inline]
fn subinternal(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    let r = d / c;
    let t = 1.0 / (c + d * r);
    // Im((a + ib)/(c + id)) = Re((b − ia)/(c + id)).
    let e = compreal(a, b, c, d, r, t);
    let f = compreal(b, -a, c, d, r, t);
    (e, f)
}

/// Real part of `(a + ib)/(c + id)` given `r = d/c` and `t = 1/(c + d·r)`.
#[inline]
fn compreal(a: f64, b: f64, c: f64, d: f64, r: f64, t: f64) -> f64 {
    if r != 0.0 {
        let br = b * r;
        if br != 0.0 {
            (a + br) * t
        } else {
            a * t + (b * t) * r
        }
    } else {
        (a + d * (b / c)) * t
    }
}
