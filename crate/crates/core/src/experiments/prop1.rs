//! Sweep of the underflow implication the improved algorithm relies on:
//! for `0 < d <= c` and `b > 0` in binary64, if `d/c < alpha` and
//! `b/c < alpha` then `b*d/c < alpha`.
//!
//! All three tests are evaluated exactly on the integers `x * 2^1074`, so
//! the check does not depend on any rounding of the ratios.

use num_bigint::BigUint;
use rand::Rng;
use serde::Serialize;

use crate::fpkit::{pow2, sampler::trial_rng, scalbn, serialize_hex, ALPHA, EPS, OMEGA};
use crate::oracle::scaled_integer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleStrategy {
    PowerOfTwo,
    RandomSignificand,
    NearThreshold,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prop1Triple {
    #[serde(serialize_with = "serialize_hex")]
    pub b: f64,
    #[serde(serialize_with = "serialize_hex")]
    pub c: f64,
    #[serde(serialize_with = "serialize_hex")]
    pub d: f64,
    pub strategy: SampleStrategy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop1Report {
    pub samples: u64,
    /// Samples for which both premises held.
    pub premises_held: u64,
    pub counterexamples: u64,
    pub witnesses: Vec<Prop1Triple>,
}

impl Prop1Report {
    fn new() -> Self {
        Prop1Report {
            samples: 0,
            premises_held: 0,
            counterexamples: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, t: Prop1Triple) {
        self.samples += 1;
        match underflow_implication_holds(t.b, t.c, t.d) {
            None => {}
            Some(true) => self.premises_held += 1,
            Some(false) => {
                self.premises_held += 1;
                self.counterexamples += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(t);
                }
            }
        }
    }

    fn merge(mut self, other: Prop1Report) -> Self {
        self.samples += other.samples;
        self.premises_held += other.premises_held;
        self.counterexamples += other.counterexamples;
        self.witnesses.extend(other.witnesses);
        self.witnesses.truncate(MAX_WITNESSES);
        self
    }
}

const MAX_WITNESSES: usize = 16;

/// `None` when a premise fails (or the triple is out of domain), otherwise
/// whether the conclusion holds. Signs are ignored.
pub fn underflow_implication_holds(b: f64, c: f64, d: f64) -> Option<bool> {
    let (b, c, d) = (b.abs(), c.abs(), d.abs());
    if !(b.is_finite() && c.is_finite() && d.is_finite()) || b == 0.0 || d == 0.0 || d > c {
        return None;
    }
    let big = |x: f64| -> BigUint {
        scaled_integer(x)
            .and_then(|m| m.to_biguint())
            .expect("finite")
    };
    let (bb, cc, dd) = (big(b), big(c), big(d));
    // x/c < 2^-1074  <=>  X * 2^1074 < C  with X = x * 2^1074.
    if (&dd << 1074u32) >= cc || (&bb << 1074u32) >= cc {
        return None;
    }
    Some(bb * dd < cc)
}

fn random_significand(rng: &mut impl Rng) -> f64 {
    // [1, 2) with 52 random fraction bits.
    f64::from_bits(0x3ff0_0000_0000_0000 | (rng.gen::<u64>() >> 12))
}

/// `m * 2^e` rounded once; `m` in `[1, 2)`.
fn build(m: f64, e: i32) -> f64 {
    scalbn(m, e)
}

fn draw(seed: u64, k: u64) -> Prop1Triple {
    let mut rng = trial_rng(seed, k);
    match k % 4 {
        0 => {
            // Pure powers of two with both premises met or just missed.
            let ec = rng.gen_range(-1074..=1023);
            let ed = ec - rng.gen_range(1070..=1080);
            let eb = ec - rng.gen_range(1070..=1100);
            Prop1Triple {
                b: pow2(eb.max(-1074)),
                c: pow2(ec),
                d: pow2(ed.clamp(-1074, ec)),
                strategy: SampleStrategy::PowerOfTwo,
            }
        }
        1 => {
            let ec = rng.gen_range(-1074..=1023);
            let ed = rng.gen_range(-1074..=ec);
            let eb = rng.gen_range(-1074..=1023);
            Prop1Triple {
                b: build(random_significand(&mut rng), eb),
                c: build(random_significand(&mut rng), ec),
                d: build(random_significand(&mut rng), ed),
                strategy: SampleStrategy::RandomSignificand,
            }
        }
        _ => {
            // c large enough that alpha * c is representable above alpha,
            // then b and d a few ulps around alpha * c.
            let ec = rng.gen_range(0..=1023);
            let c = build(random_significand(&mut rng), ec).min(OMEGA);
            let t = c * ALPHA;
            let near = |rng: &mut dyn rand::RngCore| {
                let bits = t.to_bits() as i64 + rng.gen_range(-64i64..=4);
                f64::from_bits(bits.max(1) as u64)
            };
            let b = near(&mut rng);
            let d = near(&mut rng).min(c);
            Prop1Triple {
                b,
                c,
                d,
                strategy: SampleStrategy::NearThreshold,
            }
        }
    }
}

/// Checks `samples` triples drawn from a mix of strategies: a quarter pure
/// powers of two near the premise thresholds, a quarter random significands
/// over the whole range, and the rest within a few ulps of `alpha * c`.
pub fn check_underflow_implication(samples: u64, seed: u64) -> Prop1Report {
    use rayon::prelude::*;
    (0..samples)
        .into_par_iter()
        .fold(Prop1Report::new, |mut rep, k| {
            rep.record(draw(seed, k));
            rep
        })
        .reduce(Prop1Report::new, Prop1Report::merge)
}

/// Directed enumeration around the thresholds: `c` runs over powers of two
/// and their neighbours up to `Omega`, and `b`, `d` over the ulps
/// surrounding `alpha * c` and `alpha * c * (1 +- eps)`.
pub fn boundary_sweep() -> Prop1Report {
    let mut rep = Prop1Report::new();
    let mut cs = Vec::new();
    for e in 0..=1023 {
        let p = pow2(e);
        cs.extend([p, p.next_down(), p.next_up(), p * (1.0 + EPS) * 1.5]);
    }
    cs.push(OMEGA);
    cs.retain(|c| c.is_finite() && *c > 0.0);
    for &c in &cs {
        let t = c * ALPHA;
        let mut around = Vec::new();
        for centre in [t, t * (1.0 - EPS), t * (1.0 + EPS)] {
            let base = centre.to_bits() as i64;
            around.extend((-3..=3).map(|k| f64::from_bits((base + k).max(1) as u64)));
        }
        around.extend([ALPHA, pow2(-1073)]);
        for &b in &around {
            for &d in &around {
                if d <= c {
                    rep.record(Prop1Triple {
                        b,
                        c,
                        d,
                        strategy: SampleStrategy::Boundary,
                    });
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_of_two_example() {
        assert_eq!(
            underflow_implication_holds(pow2(-600), pow2(600), pow2(-600)),
            Some(true)
        );
    }

    #[test]
    fn premise_filter() {
        // d/c == alpha exactly: premise fails.
        assert_eq!(underflow_implication_holds(ALPHA, 1.0, ALPHA), None);
        assert_eq!(
            underflow_implication_holds(pow2(-1034), pow2(40), pow2(-1050)),
            None
        );
        assert_eq!(
            underflow_implication_holds(pow2(-1050), pow2(40), pow2(-1034)),
            None
        );
        assert_eq!(
            underflow_implication_holds(pow2(-1050), pow2(40), pow2(-1035)),
            Some(true)
        );
        assert_eq!(
            underflow_implication_holds(pow2(-1035), pow2(40), pow2(-1050)),
            Some(true)
        );
        // d > c is outside the domain.
        assert_eq!(underflow_implication_holds(ALPHA, ALPHA, 1.0), None);
        assert_eq!(
            underflow_implication_holds(-pow2(-1050), -pow2(40), pow2(-1035)),
            Some(true)
        );
    }

    #[test]
    fn sweep_has_no_counterexamples() {
        let rep = check_underflow_implication(20_000, 3);
        assert_eq!(rep.samples, 20_000);
        assert_eq!(rep.counterexamples, 0, "{:?}", rep.witnesses);
        assert!(rep.premises_held > 8_000, "{rep:?}");
        assert_eq!(rep, check_underflow_implication(20_000, 3));
    }

    #[test]
    fn boundary_has_no_counterexamples() {
        let rep = boundary_sweep();
        assert_eq!(rep.counterexamples, 0);
        assert!(rep.premises_held > 0 && rep.premises_held < rep.samples);
    }
}
