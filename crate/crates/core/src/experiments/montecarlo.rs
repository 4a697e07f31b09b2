use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{divide, AlgorithmId};
use crate::error::{Error, Result};
use crate::fpkit::{
    accuracy::MAX_BITS, complex_accuracy, sample_operands, serialize_hex, SampledOperands,
};
use crate::oracle::Reference;

pub const DEFAULT_TRIALS: u64 = 100_000;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FailureEstimate {
    pub algorithm: AlgorithmId,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(serialize_with = "serialize_hex")]
    pub p_hat: f64,
    #[serde(serialize_with = "serialize_hex")]
    pub variance: f64,
    #[serde(serialize_with = "serialize_hex")]
    pub ci_low: f64,
    #[serde(serialize_with = "serialize_hex")]
    pub ci_high: f64,
    pub fail_threshold_bits: u32,
    pub seed: u64,
}

impl FailureEstimate {
    /// Wald interval `p ± 1.96 sqrt(p(1-p)/N)` clamped to `[0, 1]`.
    pub fn from_counts(
        algorithm: AlgorithmId,
        n: u64,
        t: u64,
        fail_threshold_bits: u32,
        seed: u64,
    ) -> Self {
        assert!(n >= 1 && t <= n);
        let p_hat = t as f64 / n as f64;
        let variance = p_hat * (1.0 - p_hat) / n as f64;
        let half = Z_95 * variance.sqrt();
        FailureEstimate {
            algorithm,
            n,
            t,
            p_hat,
            variance,
            ci_low: (p_hat - half).clamp(0.0, 1.0),
            ci_high: (p_hat + half).clamp(0.0, 1.0),
            fail_threshold_bits,
            seed,
        }
    }

    pub fn overlaps(&self, other: &FailureEstimate) -> bool {
        self.ci_low <= other.ci_high && other.ci_low <= self.ci_high
    }
}

/// Per-trial `min_bits` distribution of one algorithm over a trial stream.
///
/// `counts[k]` is the number of trials scoring exactly `k` bits. A NaN or
/// infinite result against a finite reference scores 0, so every failure
/// definition is a prefix sum of this histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AccuracyHistogram {
    pub algorithm: AlgorithmId,
    pub n: u64,
    pub seed: u64,
    pub reference: Reference,
    pub counts: Vec<u64>,
}

impl AccuracyHistogram {
    /// Trials with `min_bits < threshold`.
    pub fn failures(&self, threshold: u32) -> u64 {
        self.counts[..(threshold.min(MAX_BITS + 1) as usize)]
            .iter()
            .sum()
    }

    pub fn estimate(&self, threshold: u32) -> FailureEstimate {
        FailureEstimate::from_counts(
            self.algorithm,
            self.n,
            self.failures(threshold),
            threshold,
            self.seed,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloConfig {
    pub trials: u64,
    pub seed: u64,
    pub reference: Reference,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

impl MonteCarloConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        MonteCarloConfig {
            trials,
            seed,
            reference: Reference::CorrectlyRounded,
            jobs: 0,
        }
    }

    pub fn with_reference(mut self, reference: Reference) -> Self {
        self.reference = reference;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument(
                "number of trials must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

fn trial_bits(algorithms: &[AlgorithmId], ops: &SampledOperands, reference: Reference) -> Vec<u32> {
    let (x, y) = (ops.numerator(), ops.denominator());
    // Sampled components are nonzero and finite, so the reference exists.
    let expected = reference
        .divide(x, y)
        .expect("sampled operands are finite and nonzero");
    algorithms
        .iter()
        .map(|&alg| {
            complex_accuracy(divide(alg, x, y), expected)
                .expect("reference is never NaN")
                .min_bits
        })
        .collect()
}

fn run_in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

/// Scores every algorithm on the same trial stream. Aggregation is an
/// integer sum, so the result does not depend on how trials are split
/// between workers.
pub fn score_trials(
    algorithms: &[AlgorithmId],
    config: &MonteCarloConfig,
) -> Result<Vec<AccuracyHistogram>> {
    config.validate()?;
    let width = algorithms.len() * (MAX_BITS as usize + 1);
    let MonteCarloConfig {
        trials,
        seed,
        reference,
        jobs,
    } = *config;
    let flat = run_in_pool(jobs, || {
        (0..trials)
            .into_par_iter()
            .fold(
                || vec![0u64; width],
                |mut acc, k| {
                    let ops = sample_operands(seed, k);
                    for (i, bits) in trial_bits(algorithms, &ops, reference)
                        .into_iter()
                        .enumerate()
                    {
                        acc[i * (MAX_BITS as usize + 1) + bits as usize] += 1;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; width],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    })?;
    Ok(algorithms
        .iter()
        .zip(flat.chunks(MAX_BITS as usize + 1))
        .map(|(&algorithm, counts)| AccuracyHistogram {
            algorithm,
            n: trials,
            seed,
            reference,
            counts: counts.to_vec(),
        })
        .collect())
}

fn check_threshold(bits: u32) -> Result<()> {
    if !(1..=MAX_BITS).contains(&bits) {
        return Err(Error::InvalidArgument(format!(
            "failure threshold must be in 1..={MAX_BITS} bits, got {bits}"
        )));
    }
    Ok(())
}

pub fn estimate_all(
    algorithms: &[AlgorithmId],
    config: &MonteCarloConfig,
    fail_threshold_bits: u32,
) -> Result<Vec<FailureEstimate>> {
    check_threshold(fail_threshold_bits)?;
    Ok(score_trials(algorithms, config)?
        .iter()
        .map(|h| h.estimate(fail_threshold_bits))
        .collect())
}

pub fn estimate_failure(
    alg: AlgorithmId,
    trials: u64,
    seed: u64,
    fail_threshold_bits: u32,
) -> Result<FailureEstimate> {
    Ok(estimate_all(
        &[alg],
        &MonteCarloConfig::new(trials, seed),
        fail_threshold_bits,
    )?[0])
}

/// Rates of robust results below 52 bits and of results that are not
/// correctly rounded, over one trial stream.
pub fn estimate_robust_quality(
    config: &MonteCarloConfig,
) -> Result<(FailureEstimate, FailureEstimate)> {
    let hist = &score_trials(&[AlgorithmId::Robust], config)?[0];
    Ok((hist.estimate(52), hist.estimate(MAX_BITS)))
}

/// Trials (in index order, at most `limit`) where `alg` scores below
/// `threshold` bits.
pub fn find_failures(
    alg: AlgorithmId,
    config: &MonteCarloConfig,
    threshold: u32,
    limit: usize,
) -> Result<Vec<(SampledOperands, u32)>> {
    config.validate()?;
    check_threshold(threshold)?;
    let MonteCarloConfig {
        trials,
        seed,
        reference,
        jobs,
    } = *config;
    let mut found: Vec<(SampledOperands, u32)> = run_in_pool(jobs, || {
        (0..trials)
            .into_par_iter()
            .filter_map(|k| {
                let ops = sample_operands(seed, k);
                let bits = trial_bits(&[alg], &ops, reference)[0];
                (bits < threshold).then_some((ops, bits))
            })
            .collect()
    })?;
    found.truncate(limit);
    Ok(found)
}
