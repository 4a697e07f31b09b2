//! The eight complex-division algorithms under test.
//!
//! Every algorithm is a plain function of two [`Complex64`] values that
//! works only in binary64 arithmetic. Overflow, underflow and invalid
//! operations are left to IEEE semantics, so `Inf` and `NaN` are ordinary
//! outputs.

pub mod annex_g;
pub mod improved;
pub mod li;
pub mod naive;
pub mod priest;
pub mod robust;
pub mod smith;
pub mod stewart;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::fpkit::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    Naive,
    Smith,
    Stewart,
    AnnexG,
    Li,
    Priest,
    Improved,
    Robust,
}

pub type Kernel = fn(Complex64, Complex64) -> Complex64;

impl AlgorithmId {
    /// All algorithms, in report column order.
    pub const ALL: [AlgorithmId; 8] = [
        AlgorithmId::Naive,
        AlgorithmId::Smith,
        AlgorithmId::Stewart,
        AlgorithmId::Li,
        AlgorithmId::AnnexG,
        AlgorithmId::Priest,
        AlgorithmId::Improved,
        AlgorithmId::Robust,
    ];

    /// Stable identifier used on the command line and in CSV/JSON output.
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Naive => "naive",
            AlgorithmId::Smith => "smith",
            AlgorithmId::Stewart => "stewart",
            AlgorithmId::AnnexG => "annex_g",
            AlgorithmId::Li => "li",
            AlgorithmId::Priest => "priest",
            AlgorithmId::Improved => "improved",
            AlgorithmId::Robust => "robust",
        }
    }

    pub fn kernel(self) -> Kernel {
        match self {
            AlgorithmId::Naive => naive::divide,
            AlgorithmId::Smith => smith::divide,
            AlgorithmId::Stewart => stewart::divide,
            AlgorithmId::AnnexG => annex_g::divide,
            AlgorithmId::Li => li::divide,
            AlgorithmId::Priest => priest::divide,
            AlgorithmId::Improved => improved::divide,
            AlgorithmId::Robust => robust::divide,
        }
    }

    /// Parses a comma-separated list; `all` expands to every algorithm.
    pub fn parse_list(s: &str) -> Result<Vec<AlgorithmId>, Error> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',') {
            let id: AlgorithmId = part.trim().parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = AlgorithmId::ALL.iter().map(|a| a.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown algorithm {s:?} (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

impl Serialize for AlgorithmId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Runs the selected algorithm on `x / y`.
#[inline]
pub fn divide(alg: AlgorithmId, x: Complex64, y: Complex64) -> Complex64 {
    match alg {
        AlgorithmId::Naive => naive::divide(x, y),
        AlgorithmId::Smith => smith::divide(x, y),
        AlgorithmId::Stewart => stewart::divide(x, y),
        AlgorithmId::AnnexG => annex_g::divide(x, y),
        AlgorithmId::Li => li::divide(x, y),
        AlgorithmId::Priest => priest::divide(x, y),
        AlgorithmId::Improved => improved::divide(x, y),
        AlgorithmId::Robust => robust::divide(x, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for alg in AlgorithmId::ALL {
            assert_eq!(alg.name().parse::<AlgorithmId>().unwrap(), alg);
            assert_eq!(alg.to_string(), alg.name());
        }
        assert!("C99".parse::<AlgorithmId>().is_err());
    }

    #[test]
    fn list_parsing() {
        assert_eq!(AlgorithmId::parse_list("all").unwrap().len(), 8);
        assert_eq!(
            AlgorithmId::parse_list("improved, robust,improved").unwrap(),
            vec![AlgorithmId::Improved, AlgorithmId::Robust]
        );
        assert!(AlgorithmId::parse_list("naive,bogus").is_err());
    }

    #[test]
    fn dispatch_matches_kernels() {
        let x = Complex64::new(1.25, -3.5);
        let y = Complex64::new(0.75, 2.0);
        for alg in AlgorithmId::ALL {
            assert!(divide(alg, x, y).bit_eq(alg.kernel()(x, y)));
        }
    }
}
