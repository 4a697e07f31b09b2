//! Binary64 plumbing: format constants, the complex operand type, the
//! bits-of-accuracy metric, the random operand sampler and hex-float text.

pub mod accuracy;
pub mod complex;
pub mod format;
pub mod hexfloat;
pub mod sampler;

pub use accuracy::{bits_of_accuracy, complex_accuracy, AccuracyResult, RelErr};
pub use complex::Complex64;
pub use format::{exponent, logb, pow2, scalbn, FloatFormat, ALPHA, BINARY64, EPS, MU, OMEGA};
pub use hexfloat::{format_hexfloat, parse_hexfloat, parse_literal, serialize_hex, ParsedLiteral};
pub use sampler::{sample_operands, SampledOperands};
