//! Randomized failure-rate estimation, the underflow-implication sweep used
//! by the improved algorithm, and the throughput benchmark.

mod bench;
mod montecarlo;
mod prop1;
mod report;

pub use bench::{run_bench, BenchResult, DEFAULT_BENCH_REPS, DEFAULT_BENCH_SIZE};
pub use montecarlo::{
    estimate_all, estimate_failure, estimate_robust_quality, find_failures, score_trials,
    AccuracyHistogram, FailureEstimate, MonteCarloConfig, DEFAULT_TRIALS, Z_95,
};
pub use prop1::{
    boundary_sweep, check_underflow_implication, underflow_implication_holds, Prop1Report,
    Prop1Triple, SampleStrategy,
};
pub use report::{bench_csv, estimates_csv, BENCH_CSV_HEADER, ESTIMATE_CSV_HEADER};
