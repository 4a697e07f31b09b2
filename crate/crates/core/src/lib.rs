//! Floating-point complex division: eight binary64 algorithms, a
//! correctly-rounded exact reference, and the experiments used to compare
//! them (hard-case accuracy table, Monte-Carlo failure rates, throughput).
//!
//! All algorithms run strictly in binary64 with non-stop IEEE semantics:
//! overflow yields `Inf`, invalid operations yield `NaN`, nothing traps.

pub mod algorithms;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod experiments;
pub mod fpkit;
pub mod oracle;

pub use algorithms::{divide, AlgorithmId};
pub use error::{Error, Result};
pub use fpkit::{AccuracyResult, Complex64, FloatFormat, RelErr};
