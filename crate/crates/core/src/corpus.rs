//! The hard-case corpus and the golden accuracy table.
//!
//! Corpus files hold one case per line, `;`-separated, with every binary64
//! field written as a hex-float literal:
//!
//! ```text
//! id; x_re; x_im; y_re; y_im; z_re; z_im; note
//! ```
//!
//! Golden files hold `case_id; algo; bits` rows. In both formats blank lines
//! and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::algorithms::{divide, AlgorithmId};
use crate::error::{Error, Result};
use crate::fpkit::{complex_accuracy, format_hexfloat, parse_hexfloat, Complex64};
use crate::oracle::oracle_divide;

pub const BUILTIN_CORPUS: &str = include_str!("../data/corpus.txt");
pub const BUILTIN_GOLDEN: &str = include_str!("../data/golden.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct DivisionCase {
    pub id: u32,
    pub x: Complex64,
    pub y: Complex64,
    pub expected: Complex64,
    pub note: String,
}

/// Expected `min_bits` per `(case_id, algorithm)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldenTable {
    cells: BTreeMap<(u32, AlgorithmId), u32>,
}

impl GoldenTable {
    pub fn get(&self, case_id: u32, alg: AlgorithmId) -> Option<u32> {
        self.cells.get(&(case_id, alg)).copied()
    }

    pub fn insert(&mut self, case_id: u32, alg: AlgorithmId, bits: u32) {
        self.cells.insert((case_id, alg), bits);
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells of `cases × algorithms` with no golden value.
    pub fn missing(
        &self,
        cases: &[DivisionCase],
        algorithms: &[AlgorithmId],
    ) -> Vec<(u32, AlgorithmId)> {
        cases
            .iter()
            .flat_map(|c| algorithms.iter().map(move |&a| (c.id, a)))
            .filter(|key| !self.cells.contains_key(key))
            .collect()
    }
}

fn corpus_error(source: &str, line: usize, reason: impl Into<String>) -> Error {
    Error::Corpus {
        path: source.to_owned(),
        line,
        reason: reason.into(),
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses corpus text and checks every stored quotient against the oracle.
pub fn parse_corpus(text: &str, source: &str) -> Result<Vec<DivisionCase>> {
    let mut cases = Vec::new();
    for (lineno, line) in data_lines(text) {
        let fields: Vec<&str> = line.splitn(8, ';').map(str::trim).collect();
        if fields.len() != 8 {
            return Err(corpus_error(
                source,
                lineno,
                format!("expected 8 `;`-separated fields, found {}", fields.len()),
            ));
        }
        let id: u32 = fields[0]
            .parse()
            .map_err(|_| corpus_error(source, lineno, format!("bad case id {:?}", fields[0])))?;
        let mut v = [0.0f64; 6];
        for (slot, text) in v.iter_mut().zip(&fields[1..7]) {
            *slot =
                parse_hexfloat(text).map_err(|e| corpus_error(source, lineno, e.to_string()))?;
        }
        let case = DivisionCase {
            id,
            x: Complex64::new(v[0], v[1]),
            y: Complex64::new(v[2], v[3]),
            expected: Complex64::new(v[4], v[5]),
            note: fields[7].to_owned(),
        };
        let reference = oracle_divide(case.x, case.y)
            .map_err(|e| corpus_error(source, lineno, format!("case {id}: {e}")))?;
        if !reference.bit_eq(case.expected) {
            return Err(Error::OracleMismatch {
                case: id,
                stored: case.expected.to_string(),
                reference: reference.to_string(),
            });
        }
        cases.push(case);
    }
    Ok(cases)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<DivisionCase>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_corpus(&text, &path.display().to_string())
}

pub fn builtin_corpus() -> Vec<DivisionCase> {
    parse_corpus(BUILTIN_CORPUS, "<builtin corpus>").expect("builtin corpus is valid")
}

/// Renders cases in the corpus file format.
pub fn format_corpus(cases: &[DivisionCase]) -> String {
    let mut out = String::from("# id; x_re; x_im; y_re; y_im; z_re; z_im; note\n");
    for c in cases {
        let fields =
            [c.x.re, c.x.im, c.y.re, c.y.im, c.expected.re, c.expected.im].map(format_hexfloat);
        out.push_str(&format!("{}; {}; {}\n", c.id, fields.join("; "), c.note));
    }
    out
}

pub fn parse_golden(text: &str, source: &str) -> Result<GoldenTable> {
    let mut table = GoldenTable::default();
    for (lineno, line) in data_lines(text) {
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        let [case, algo, bits] = fields[..] else {
            return Err(corpus_error(
                source,
                lineno,
                format!(
                    "expected `case_id; algo; bits`, found {} fields",
                    fields.len()
                ),
            ));
        };
        let case: u32 = case
            .parse()
            .map_err(|_| corpus_error(source, lineno, format!("bad case id {case:?}")))?;
        let alg: AlgorithmId = algo
            .parse()
            .map_err(|e: Error| corpus_error(source, lineno, e.to_string()))?;
        let bits: u32 = bits.parse().ok().filter(|b| *b <= 53).ok_or_else(|| {
            corpus_error(
                source,
                lineno,
                format!("bits must be in 0..=53, got {bits:?}"),
            )
        })?;
        if table.get(case, alg).is_some() {
            return Err(corpus_error(
                source,
                lineno,
                format!("duplicate cell ({case}, {alg})"),
            ));
        }
        table.insert(case, alg, bits);
    }
    Ok(table)
}

pub fn load_golden(path: impl AsRef<Path>) -> Result<GoldenTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_golden(&text, &path.display().to_string())
}

pub fn builtin_golden() -> GoldenTable {
    parse_golden(BUILTIN_GOLDEN, "<builtin golden>").expect("builtin golden table is valid")
}

/// One `(case, algorithm)` cell of a conformance run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoldenCell {
    pub case_id: u32,
    pub algorithm: AlgorithmId,
    pub bits: u32,
    /// `None` when the golden table has no entry, which counts as a failure.
    pub expected_bits: Option<u32>,
    pub pass: bool,
}

/// Scores every algorithm on every case and compares with the golden table.
/// Cells are ordered case-major, algorithms in the order given.
pub fn run_golden(
    cases: &[DivisionCase],
    golden: &GoldenTable,
    algorithms: &[AlgorithmId],
) -> Vec<GoldenCell> {
    let mut cells = Vec::with_capacity(cases.len() * algorithms.len());
    for case in cases {
        for &alg in algorithms {
            let z = divide(alg, case.x, case.y);
            let bits = complex_accuracy(z, case.expected)
                .expect("corpus quotients are finite or infinite, never NaN")
                .min_bits;
            let expected_bits = golden.get(case.id, alg);
            cells.push(GoldenCell {
                case_id: case.id,
                algorithm: alg,
                bits,
                expected_bits,
                pass: expected_bits == Some(bits),
            });
        }
    }
    cells
}
