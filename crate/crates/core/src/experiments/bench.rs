use std::hint::black_box;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::algorithms::{
    annex_g, improved, li, naive, priest, robust, smith, stewart, AlgorithmId,
};
use crate::error::{Error, Result};
use crate::fpkit::sampler::trial_rng;
use crate::fpkit::{serialize_hex, Complex64};

pub const DEFAULT_BENCH_SIZE: usize = 1_574_802;
pub const DEFAULT_BENCH_REPS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchResult {
    pub algorithm: AlgorithmId,
    pub dataset_size: usize,
    pub repetitions: usize,
    #[serde(serialize_with = "serialize_hex")]
    pub mean_seconds: f64,
    /// Millions of complex divisions per second.
    #[serde(serialize_with = "serialize_hex")]
    pub mcdps: f64,
    /// Wrapping sum of the output bit patterns of one pass.
    pub checksum: u64,
    /// Whether every timed pass produced the same checksum.
    pub checksum_stable: bool,
}

fn dataset(size: usize, seed: u64) -> (Vec<Complex64>, Vec<Complex64>) {
    // One stream for the whole dataset, separate from the Monte-Carlo streams.
    let mut rng = trial_rng(seed, u64::MAX);
    let mut draw = || Complex64::new(rng.gen::<f64>(), rng.gen::<f64>());
    let xs: Vec<_> = (0..size).map(|_| draw()).collect();
    let ys: Vec<_> = (0..size).map(|_| draw()).collect();
    (xs, ys)
}

fn checksum(out: &[Complex64]) -> u64 {
    out.iter().fold(0u64, |acc, z| {
        acc.wrapping_add(z.re.to_bits())
            .wrapping_add(z.im.to_bits().rotate_left(1))
    })
}

fn pass<F: Fn(Complex64, Complex64) -> Complex64>(
    f: &F,
    xs: &[Complex64],
    ys: &[Complex64],
    out: &mut [Complex64],
) {
    for ((x, y), o) in xs.iter().zip(ys).zip(out.iter_mut()) {
        *o = f(black_box(*x), black_box(*y));
    }
    black_box(&mut *out);
}

fn time_kernel<F: Fn(Complex64, Complex64) -> Complex64>(
    f: F,
    xs: &[Complex64],
    ys: &[Complex64],
    reps: usize,
) -> (Vec<f64>, Vec<u64>) {
    let mut out = vec![Complex64::default(); xs.len()];
    pass(&f, xs, ys, &mut out);
    let mut seconds = Vec::with_capacity(reps);
    let mut sums = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        pass(&f, xs, ys, &mut out);
        seconds.push(start.elapsed().as_secs_f64());
        sums.push(checksum(&out));
    }
    (seconds, sums)
}

/// Times `repetitions` passes of `alg` over a fixed dataset of operands with
/// components uniform in `[0, 1]`, after one untimed warm-up pass.
/// Single-threaded.
pub fn run_bench(
    alg: AlgorithmId,
    dataset_size: usize,
    repetitions: usize,
    seed: u64,
) -> Result<BenchResult> {
    if dataset_size == 0 {
        return Err(Error::InvalidArgument(
            "benchmark dataset size must be at least 1".into(),
        ));
    }
    if repetitions == 0 {
        return Err(Error::InvalidArgument(
            "benchmark repetitions must be at least 1".into(),
        ));
    }
    let (xs, ys) = dataset(dataset_size, seed);
    let (seconds, sums) = match alg {
        AlgorithmId::Naive => time_kernel(naive::divide, &xs, &ys, repetitions),
        AlgorithmId::Smith => time_kernel(smith::divide, &xs, &ys, repetitions),
        AlgorithmId::Stewart => time_kernel(stewart::divide, &xs, &ys, repetitions),
        AlgorithmId::AnnexG => time_kernel(annex_g::divide, &xs, &ys, repetitions),
        AlgorithmId::Li => time_kernel(li::divide, &xs, &ys, repetitions),
        AlgorithmId::Priest => time_kernel(priest::divide, &xs, &ys, repetitions),
        AlgorithmId::Improved => time_kernel(improved::divide, &xs, &ys, repetitions),
        AlgorithmId::Robust => time_kernel(robust::divide, &xs, &ys, repetitions),
    };
    let mean_seconds = seconds.iter().sum::<f64>() / repetitions as f64;
    Ok(BenchResult {
        algorithm: alg,
        dataset_size,
        repetitions,
        mean_seconds,
        mcdps: dataset_size as f64 / mean_seconds / 1e6,
        checksum: sums[0],
        checksum_stable: sums.iter().all(|&s| s == sums[0]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_dataset() {
        assert!(run_bench(AlgorithmId::Smith, 0, 1, 0).is_err());
        assert!(run_bench(AlgorithmId::Smith, 10, 0, 0).is_err());
    }

    #[test]
    fn small_run() {
        let r = run_bench(AlgorithmId::Improved, 1000, 3, 4).unwrap();
        assert_eq!((r.dataset_size, r.repetitions), (1000, 3));
        assert!(r.checksum_stable);
        assert!(r.mean_seconds > 0.0 && r.mcdps > 0.0);
        assert!((r.mcdps - 1000.0 / r.mean_seconds / 1e6).abs() <= 1e-9 * r.mcdps);
        // Same data, same outputs.
        assert_eq!(
            run_bench(AlgorithmId::Improved, 1000, 1, 4)
                .unwrap()
                .checksum,
            r.checksum
        );
    }

    #[test]
    fn operands_in_unit_interval() {
        let (xs, ys) = dataset(500, 1);
        for z in xs.iter().chain(&ys) {
            assert!((0.0..=1.0).contains(&z.re) && (0.0..=1.0).contains(&z.im));
        }
    }
}
