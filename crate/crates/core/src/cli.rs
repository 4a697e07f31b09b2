//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a conformance or property check fails,
//! 2 on usage errors (bad flags, bad literals, unreadable files).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algorithms::{divide, AlgorithmId};
use crate::corpus::{
    builtin_corpus, builtin_golden, load_corpus, load_golden, run_golden, GoldenCell,
};
use crate::error::{Error, Result};
use crate::experiments::{
    bench_csv, boundary_sweep, check_underflow_implication, estimate_all, estimates_csv, run_bench,
    BenchResult, FailureEstimate, MonteCarloConfig, Prop1Report, DEFAULT_BENCH_REPS,
    DEFAULT_BENCH_SIZE, DEFAULT_TRIALS,
};
use crate::fpkit::{complex_accuracy, format_hexfloat, parse_literal, Complex64};
use crate::oracle::Reference;

pub const CORPUS_ENV: &str = "COMPDIV_CORPUS";

#[derive(Debug, Parser)]
#[command(
    name = "compdiv",
    version,
    about = "Binary64 complex division algorithms and accuracy experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Divide one pair of complex numbers.
    Divide(DivideArgs),
    /// Score algorithms on the hard-case corpus and compare with the golden table.
    Cases(CasesArgs),
    /// Estimate failure probabilities on random power-of-two operands.
    Montecarlo(MonteCarloArgs),
    /// Sweep the underflow implication used by the improved algorithm.
    Prop1(Prop1Args),
    /// Measure throughput in millions of complex divisions per second.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct DivideArgs {
    #[arg(long, value_parser = parse_algorithm)]
    pub algo: AlgorithmId,
    /// Numerator as `re,im` (hex-float or decimal components).
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Denominator as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Also print the correctly rounded quotient and the bits of accuracy.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct CasesArgs {
    /// Comma-separated algorithm names, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_algorithms)]
    pub algos: AlgoList,
    /// Corpus file; the built-in corpus when absent.
    #[arg(long, env = CORPUS_ENV)]
    pub corpus: Option<PathBuf>,
    /// Golden table file; the built-in table when absent.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    #[arg(long, default_value = "all", value_parser = parse_algorithms)]
    pub algo: AlgoList,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// A trial fails when it scores fewer bits than this.
    #[arg(long, default_value_t = 53)]
    pub fail_bits: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// `exact` (correctly rounded) or `extended` (64-bit significand, then binary64).
    #[arg(long, default_value = "exact", value_parser = parse_reference)]
    pub reference: Reference,
}

#[derive(Debug, Args)]
pub struct Prop1Args {
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "all", value_parser = parse_algorithms)]
    pub algos: AlgoList,
    #[arg(long, default_value_t = DEFAULT_BENCH_SIZE)]
    pub size: usize,
    #[arg(long, default_value_t = DEFAULT_BENCH_REPS)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

fn parse_algorithm(s: &str) -> std::result::Result<AlgorithmId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A comma-separated algorithm list taken as a single flag value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgoList(pub Vec<AlgorithmId>);

fn parse_algorithms(s: &str) -> std::result::Result<AlgoList, String> {
    AlgorithmId::parse_list(s)
        .map(AlgoList)
        .map_err(|e| e.to_string())
}

fn parse_reference(s: &str) -> std::result::Result<Reference, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command: text for stdout and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(stdout: String) -> Self {
        Outcome { stdout, ok: true }
    }
}

/// Parses a `re,im` operand. Inexact decimal components produce a warning
/// naming the value actually used.
pub fn parse_operand(text: &str, warnings: &mut Vec<String>) -> Result<Complex64> {
    let (re, im) = text.split_once(',').ok_or_else(|| Error::Parse {
        token: text.to_owned(),
        reason: "expected `re,im`".into(),
    })?;
    let mut part = |s: &str| -> Result<f64> {
        let lit = parse_literal(s)?;
        if !lit.exact {
            warnings.push(format!(
                "{:?} is not exactly representable; using {}",
                s.trim(),
                format_hexfloat(lit.value)
            ));
        }
        Ok(lit.value)
    };
    Ok(Complex64::new(part(re)?, part(im)?))
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_divide(args: &DivideArgs, warnings: &mut Vec<String>) -> Result<Outcome> {
    let x = parse_operand(&args.x, warnings)?;
    let y = parse_operand(&args.y, warnings)?;
    let z = divide(args.algo, x, y);
    let reference = if args.oracle {
        let r = Reference::CorrectlyRounded.divide(x, y)?;
        Some((r, complex_accuracy(z, r)?.min_bits))
    } else {
        None
    };
    let out = match args.format {
        OutputFormat::Table => {
            let mut s = format!("{z}\n");
            if let Some((r, bits)) = reference {
                writeln!(s, "oracle {r}").unwrap();
                writeln!(s, "min_bits {bits}").unwrap();
            }
            s
        }
        OutputFormat::Csv => {
            let h = format_hexfloat;
            match reference {
                Some((r, bits)) => format!(
                    "algo,z_re,z_im,oracle_re,oracle_im,min_bits\n{},{},{},{},{},{bits}\n",
                    args.algo,
                    h(z.re),
                    h(z.im),
                    h(r.re),
                    h(r.im)
                ),
                None => format!("algo,z_re,z_im\n{},{},{}\n", args.algo, h(z.re), h(z.im)),
            }
        }
        OutputFormat::Json => {
            let mut v = json!({ "algo": args.algo, "x": x, "y": y, "result": z });
            if let Some((r, bits)) = reference {
                v["oracle"] = json!(r);
                v["min_bits"] = json!(bits);
            }
            to_json(&v)
        }
    };
    Ok(Outcome::pass(out))
}

fn cases_table(cells: &[GoldenCell], algs: &[AlgorithmId]) -> String {
    let mut s = format!("{:<6}", "case");
    for a in algs {
        write!(s, "{:>10}", a.name()).unwrap();
    }
    s.push('\n');
    for row in cells.chunks(algs.len().max(1)) {
        write!(s, "{:<6}", row[0].case_id).unwrap();
        for c in row {
            let mark = if c.pass { "" } else { "*" };
            write!(s, "{:>10}", format!("{}{mark}", c.bits)).unwrap();
        }
        s.push('\n');
    }
    let failing: Vec<_> = cells.iter().filter(|c| !c.pass).collect();
    for c in &failing {
        let want = c.expected_bits.map_or("none".to_owned(), |b| b.to_string());
        writeln!(
            s,
            "mismatch: case {} {}: {} bits, golden {want}",
            c.case_id, c.algorithm, c.bits
        )
        .unwrap();
    }
    writeln!(
        s,
        "{}/{} cells match golden",
        cells.len() - failing.len(),
        cells.len()
    )
    .unwrap();
    s
}

pub fn cmd_cases(args: &CasesArgs) -> Result<Outcome> {
    let cases = match &args.corpus {
        Some(p) => load_corpus(p)?,
        None => builtin_corpus(),
    };
    let golden = match &args.golden {
        Some(p) => load_golden(p)?,
        None => builtin_golden(),
    };
    let cells = run_golden(&cases, &golden, &args.algos.0);
    let ok = cells.iter().all(|c| c.pass);
    let stdout = match args.format {
        OutputFormat::Table => cases_table(&cells, &args.algos.0),
        OutputFormat::Csv => {
            let mut s = String::from("case_id,algo,bits,expected_bits,pass\n");
            for c in &cells {
                let want = c.expected_bits.map_or(String::new(), |b| b.to_string());
                writeln!(
                    s,
                    "{},{},{},{want},{}",
                    c.case_id, c.algorithm, c.bits, c.pass
                )
                .unwrap();
            }
            s
        }
        OutputFormat::Json => to_json(&cells),
    };
    Ok(Outcome { stdout, ok })
}

fn estimates_table(rows: &[FailureEstimate]) -> String {
    let mut s = format!(
        "{:<10}{:>9}{:>9}{:>12}{:>12}{:>12}{:>11}{:>8}\n",
        "algo", "N", "T", "p_hat", "ci_low", "ci_high", "threshold", "seed"
    );
    for e in rows {
        writeln!(
            s,
            "{:<10}{:>9}{:>9}{:>12.3e}{:>12.3e}{:>12.3e}{:>11}{:>8}",
            e.algorithm.name(),
            e.n,
            e.t,
            e.p_hat,
            e.ci_low,
            e.ci_high,
            e.fail_threshold_bits,
            e.seed
        )
        .unwrap();
    }
    s
}

pub fn cmd_montecarlo(args: &MonteCarloArgs) -> Result<Outcome> {
    let config = MonteCarloConfig::new(args.trials, args.seed)
        .with_reference(args.reference)
        .with_jobs(args.jobs);
    let rows = estimate_all(&args.algo.0, &config, args.fail_bits)?;
    Ok(Outcome::pass(match args.format {
        OutputFormat::Table => estimates_table(&rows),
        OutputFormat::Csv => estimates_csv(&rows),
        OutputFormat::Json => to_json(&rows),
    }))
}

pub fn cmd_prop1(args: &Prop1Args) -> Result<Outcome> {
    if args.samples == 0 {
        return Err(Error::InvalidArgument(
            "--samples must be at least 1".into(),
        ));
    }
    let random = check_underflow_implication(args.samples, args.seed);
    let boundary = boundary_sweep();
    let total = random.counterexamples + boundary.counterexamples;
    let stdout = match args.format {
        OutputFormat::Table => {
            let mut s = String::new();
            let mut section = |name: &str, r: &Prop1Report| {
                writeln!(
                    s,
                    "{name:<9} samples {:>9}  premises held {:>9}  counterexamples {}",
                    r.samples, r.premises_held, r.counterexamples
                )
                .unwrap();
                for w in &r.witnesses {
                    writeln!(
                        s,
                        "  witness b={} c={} d={}",
                        format_hexfloat(w.b),
                        format_hexfloat(w.c),
                        format_hexfloat(w.d)
                    )
                    .unwrap();
                }
            };
            section("random", &random);
            section("boundary", &boundary);
            writeln!(s, "{total} counterexamples").unwrap();
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("sweep,samples,premises_held,counterexamples,seed\n");
            writeln!(
                s,
                "random,{},{},{},{}",
                random.samples, random.premises_held, random.counterexamples, args.seed
            )
            .unwrap();
            writeln!(
                s,
                "boundary,{},{},{},",
                boundary.samples, boundary.premises_held, boundary.counterexamples
            )
            .unwrap();
            s
        }
        OutputFormat::Json => {
            to_json(&json!({ "seed": args.seed, "random": random, "boundary": boundary }))
        }
    };
    Ok(Outcome {
        stdout,
        ok: total == 0,
    })
}

pub fn cmd_bench(args: &BenchArgs) -> Result<Outcome> {
    if args.size == 0 || args.reps == 0 {
        return Err(Error::InvalidArgument(
            "--size and --reps must be at least 1".into(),
        ));
    }
    let rows = args
        .algos
        .0
        .iter()
        .map(|&a| run_bench(a, args.size, args.reps, args.seed))
        .collect::<Result<Vec<BenchResult>>>()?;
    let ok = rows.iter().all(|r| r.checksum_stable);
    let stdout = match args.format {
        OutputFormat::Table => {
            let mut s = format!(
                "{:<10}{:>10}{:>6}{:>14}{:>10}{:>22}\n",
                "algo", "size", "reps", "mean_seconds", "mcdps", "checksum"
            );
            for r in &rows {
                let stable = if r.checksum_stable { "" } else { " (unstable)" };
                writeln!(
                    s,
                    "{:<10}{:>10}{:>6}{:>14.6}{:>10.2}{:>22}{stable}",
                    r.algorithm.name(),
                    r.dataset_size,
                    r.repetitions,
                    r.mean_seconds,
                    r.mcdps,
                    r.checksum
                )
                .unwrap();
            }
            s
        }
        OutputFormat::Csv => bench_csv(&rows),
        OutputFormat::Json => to_json(&rows),
    };
    Ok(Outcome { stdout, ok })
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::OracleMismatch { .. } => 1,
        _ => 2,
    }
}

/// Runs one command, returning its outcome and any warnings for stderr.
pub fn execute(cli: &Cli) -> (Result<Outcome>, Vec<String>) {
    let mut warnings = Vec::new();
    let res = match &cli.command {
        Command::Divide(a) => cmd_divide(a, &mut warnings),
        Command::Cases(a) => cmd_cases(a),
        Command::Montecarlo(a) => cmd_montecarlo(a),
        Command::Prop1(a) => cmd_prop1(a),
        Command::Bench(a) => cmd_bench(a),
    };
    (res, warnings)
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (res, warnings) = execute(&cli);
    for w in warnings {
        eprintln!("warning: {w}");
    }
    match res {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome> {
        let cli =
            Cli::try_parse_from(std::iter::once("compdiv").chain(args.iter().copied())).unwrap();
        execute(&cli).0
    }

    #[test]
    fn divide_examples() {
        let out = run(&[
            "divide",
            "--algo",
            "smith",
            "--x",
            "0x1p0,0x1p0",
            "--y",
            "0x1p-1023,0x1p-1023",
        ])
        .unwrap();
        assert_eq!(out.stdout, "0x1p1023,0x0p0\n");
        // (1 - 2^1023) / Inf: the imaginary zero keeps its sign.
        let out = run(&[
            "divide",
            "--algo",
            "naive",
            "--x",
            "0x1p0,0x1p0",
            "--y",
            "0x1p0,0x1p1023",
        ])
        .unwrap();
        assert_eq!(out.stdout, "0x0p0,-0x0p0\n");
        let out = run(&[
            "divide",
            "--algo",
            "improved",
            "--x",
            "0x1p1,0x0p0",
            "--y",
            "0x1p1,0x0p0",
        ])
        .unwrap();
        assert_eq!(out.stdout, "0x1p0,0x0p0\n");
    }

    #[test]
    fn divide_with_oracle() {
        let out = run(&[
            "divide",
            "--algo",
            "naive",
            "--x",
            "0x1p0,0x1p0",
            "--y",
            "0x1p0,0x1p1023",
            "--oracle",
            "--format",
            "csv",
        ])
        .unwrap();
        assert_eq!(
            out.stdout,
            "algo,z_re,z_im,oracle_re,oracle_im,min_bits\nnaive,0x0p0,-0x0p0,0x1p-1023,-0x1p-1023,0\n"
        );
    }

    #[test]
    fn operand_parsing() {
        let mut w = Vec::new();
        assert_eq!(
            parse_operand("-0x1p0, 0.5", &mut w).unwrap(),
            Complex64::new(-1.0, 0.5)
        );
        assert!(w.is_empty());
        parse_operand("0.1,1", &mut w).unwrap();
        assert_eq!(w.len(), 1);
        assert!(w[0].contains("0x1.999999999999ap-4"), "{}", w[0]);
        assert!(parse_operand("0x1p0", &mut w).is_err());
        assert!(parse_operand("0x1p0,zz", &mut w).is_err());
    }

    #[test]
    fn cases_naive_only() {
        let out = run(&["cases", "--algos", "naive", "--format", "csv"]).unwrap();
        assert!(out.ok);
        assert_eq!(out.stdout.lines().count(), 11);
        assert!(out
            .stdout
            .lines()
            .skip(1)
            .all(|l| l.contains(",naive,0,0,true")));
    }

    #[test]
    fn bench_rejects_empty() {
        assert!(run(&["bench", "--size", "0"]).is_err());
    }

    #[test]
    fn montecarlo_rejects_zero_trials() {
        assert!(run(&["montecarlo", "--trials", "0"]).is_err());
    }
}
