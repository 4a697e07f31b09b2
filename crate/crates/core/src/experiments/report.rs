//! CSV renderings. Every binary64 field is written as a hex-float literal so
//! files round-trip bit-exactly.

use std::fmt::Write;

use super::bench::BenchResult;
use super::montecarlo::FailureEstimate;
use crate::fpkit::format_hexfloat as hex;

pub const ESTIMATE_CSV_HEADER: &str = "algo,N,T,p_hat,ci_low,ci_high,threshold_bits,seed";
pub const BENCH_CSV_HEADER: &str = "algo,dataset_size,reps,mean_seconds,mcdps,checksum";

pub fn estimates_csv(rows: &[FailureEstimate]) -> String {
    let mut out = format!("{ESTIMATE_CSV_HEADER}\n");
    for e in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            e.algorithm,
            e.n,
            e.t,
            hex(e.p_hat),
            hex(e.ci_low),
            hex(e.ci_high),
            e.fail_threshold_bits,
            e.seed
        )
        .unwrap();
    }
    out
}

pub fn bench_csv(rows: &[BenchResult]) -> String {
    let mut out = format!("{BENCH_CSV_HEADER}\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.algorithm,
            r.dataset_size,
            r.repetitions,
            hex(r.mean_seconds),
            hex(r.mcdps),
            r.checksum
        )
        .unwrap();
    }
    out
}
