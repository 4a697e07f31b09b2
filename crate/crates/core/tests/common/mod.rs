//! Helpers shared by the integration tests.

use compdiv::fpkit::OMEGA;
use compdiv::oracle::scaled_integer;
use num_bigint::{BigInt, BigUint};

/// Checks that `r` is the nearest binary64 to `n / d` (ties to even), by
/// comparing against the midpoints to both neighbours in units of 2^-1075.
pub fn is_nearest(n: &BigInt, d: &BigUint, r: f64) -> bool {
    let d = BigInt::from(d.clone());
    let q2 = n << 1075u32; // q * 2^1075 * d
                           // x in units of 2^-1075; the infinities stand in for +-2^1024.
    let half = |x: f64| match scaled_integer(x) {
        Some(m) => m << 1u32,
        None if x > 0.0 => BigInt::from(1u8) << 2099u32,
        None => -(BigInt::from(1u8) << 2099u32),
    };
    if r.is_infinite() {
        // |q| must reach the midpoint between Omega and 2^1024.
        let limit = half(OMEGA) + (BigInt::from(1u8) << (1024u32 + 1075 - 54));
        let q = if r > 0.0 { q2 } else { -q2 };
        return q >= limit * &d;
    }
    let rr = half(r);
    let lo = (half(r.next_down()) + &rr) / 2;
    let hi = (half(r.next_up()) + &rr) / 2;
    let even = !scaled_integer(r).unwrap().bit(0);
    let (lo, hi) = (lo * &d, hi * &d);
    if even {
        lo <= q2 && q2 <= hi
    } else {
        lo < q2 && q2 < hi
    }
}
