//! The C99 Annex G `_Cdivd` reference implementation: scale the denominator
//! so its larger part has exponent zero, apply the textbook formula, scale
//! back, and recover infinities and zeros when both parts come out NaN.

use crate::fpkit::{logb, scalbn, Complex64};

pub fn divide(x: Complex64, y: Complex64) -> Complex64 {
    let (mut a, mut b, mut c, mut d) = (x.re, x.im, y.re, y.im);
    let logbw = logb(c.abs().max(d.abs()));
    let mut ilogbw = 0;
    if logbw.is_finite() {
        ilogbw = logbw as i32;
        c = scalbn(c, -ilogbw);
        d = scalbn(d, -ilogbw);
    }
    let denom = c * c + d * d;
    let mut e = scalbn((a * c + b * d) / denom, -ilogbw);
    let mut f = scalbn((b * c - a * d) / denom, -ilogbw);

    if e.is_nan() && f.is_nan() {
        if denom == 0.0 && (!a.is_nan() || !b.is_nan()) {
            e = f64::INFINITY.copysign(c) * a;
            f = f64::INFINITY.copysign(c) * b;
        } else if (a.is_infinite() || b.is_infinite()) && c.is_finite() && d.is_finite() {
            a = unit_or_zero(a.is_infinite()).copysign(a);
            b = unit_or_zero(b.is_infinite()).copysign(b);
            e = f64::INFINITY * (a * c + b * d);
            f = f64::INFINITY * (b * c - a * d);
        } else if logbw == f64::INFINITY && a.is_finite() && b.is_finite() {
            c = unit_or_zero(c.is_infinite()).copysign(c);
            d = unit_or_zero(d.is_infinite()).copysign(d);
            e = 0.0 * (a * c + b * d);
            f = 0.0 * (b * c - a * d);
        }
    }
    Complex64::new(e, f)
}

fn unit_or_zero(one: bool) -> f64 {
    if one {
        1.0
    } else {
        0.0
    }
}
