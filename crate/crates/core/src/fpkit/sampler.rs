//! Random operands `s * 2^n` with uniform sign and uniform exponent over the
//! whole binary64 range, subnormal exponents included.
//!
//! Each trial gets its own ChaCha stream selected by the trial index, so an
//! operand quadruple depends only on `(seed, trial_index)` and trials can be
//! evaluated in any order or on any number of threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::complex::Complex64;
use super::format::pow2;
use super::hexfloat::serialize_hex;

pub const MIN_EXPONENT: i32 = -1074;
pub const MAX_EXPONENT: i32 = 1023;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampledOperands {
    #[serde(serialize_with = "serialize_hex")]
    pub a: f64,
    #[serde(serialize_with = "serialize_hex")]
    pub b: f64,
    #[serde(serialize_with = "serialize_hex")]
    pub c: f64,
    #[serde(serialize_with = "serialize_hex")]
    pub d: f64,
    pub signs: [i8; 4],
    pub exponents: [i32; 4],
    pub trial_index: u64,
    pub seed: u64,
}

impl SampledOperands {
    pub fn numerator(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    pub fn denominator(&self) -> Complex64 {
        Complex64::new(self.c, self.d)
    }
}

/// Trial-local generator: stream `trial_index` of the ChaCha8 generator
/// keyed by `seed`.
pub fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

pub fn sample_operands(seed: u64, trial_index: u64) -> SampledOperands {
    let mut rng = trial_rng(seed, trial_index);
    let mut signs = [1i8; 4];
    let mut exponents = [0i32; 4];
    let mut values = [0.0f64; 4];
    for i in 0..4 {
        signs[i] = if rng.gen::<bool>() { 1 } else { -1 };
        exponents[i] = rng.gen_range(MIN_EXPONENT..=MAX_EXPONENT);
        values[i] = f64::from(signs[i]) * pow2(exponents[i]);
    }
    let [a, b, c, d] = values;
    SampledOperands {
        a,
        b,
        c,
        d,
        signs,
        exponents,
        trial_index,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpkit::format::{exponent, is_power_of_two};

    #[test]
    fn deterministic_per_trial() {
        assert_eq!(sample_operands(42, 0), sample_operands(42, 0));
        assert_eq!(sample_operands(42, 77), sample_operands(42, 77));
        assert_ne!(sample_operands(42, 0), sample_operands(42, 1));
        assert_ne!(sample_operands(42, 0), sample_operands(43, 0));
    }

    #[test]
    fn values_are_signed_powers_of_two() {
        for k in 0..20_000 {
            let s = sample_operands(7, k);
            for (i, v) in [s.a, s.b, s.c, s.d].into_iter().enumerate() {
                assert!(v.is_finite() && v != 0.0);
                assert!(is_power_of_two(v));
                assert!(v.abs() >= pow2(-1074) && v.abs() <= pow2(1023));
                assert_eq!(exponent(v), Some(s.exponents[i]));
                assert_eq!(v.is_sign_negative(), s.signs[i] < 0);
            }
        }
    }

    #[test]
    fn exponent_histogram_is_uniform() {
        const DRAWS: u64 = 100_000;
        const BINS: usize = (MAX_EXPONENT - MIN_EXPONENT + 1) as usize;
        let mut hist = vec![0u64; BINS];
        let mut negatives = 0u64;
        for k in 0..DRAWS {
            let s = sample_operands(2024, k);
            hist[(s.exponents[0] - MIN_EXPONENT) as usize] += 1;
            negatives += u64::from(s.signs[0] < 0);
        }
        let expected = DRAWS as f64 / BINS as f64;
        let sigma = (expected * (1.0 - 1.0 / BINS as f64)).sqrt();
        for (i, &count) in hist.iter().enumerate() {
            assert!(
                (count as f64 - expected).abs() <= 5.0 * sigma,
                "bin {} has {count}",
                i as i32 + MIN_EXPONENT
            );
        }
        // Chi-square with 2097 degrees of freedom: mean 2097, sd ~64.8.
        let chi2: f64 = hist
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!((chi2 - 2097.0).abs() < 5.0 * 64.8, "chi2 = {chi2}");
        let p = negatives as f64 / DRAWS as f64;
        assert!((p - 0.5).abs() < 5.0 * (0.25 / DRAWS as f64).sqrt());
    }
}
