use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::hexfloat::format_hexfloat;

/// A complex number as a raw pair of binary64 values.
///
/// No normalization is applied: NaN payloads, signed zeros, infinities and
/// subnormals are carried as-is.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex64 {
    pub re: f64,
    pub im: f64,
}

impl Complex64 {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.re * s, self.im * s)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn has_nan(self) -> bool {
        self.re.is_nan() || self.im.is_nan()
    }

    /// Bitwise equality of both components.
    pub fn bit_eq(self, other: Self) -> bool {
        self.re.to_bits() == other.re.to_bits() && self.im.to_bits() == other.im.to_bits()
    }
}

/// Serializes as `{"re": "<hex>", "im": "<hex>"}`.
impl Serialize for Complex64 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Complex64", 2)?;
        st.serialize_field("re", &format_hexfloat(self.re))?;
        st.serialize_field("im", &format_hexfloat(self.im))?;
        st.end()
    }
}

impl From<(f64, f64)> for Complex64 {
    fn from((re, im): (f64, f64)) -> Self {
        Self::new(re, im)
    }
}

/// Renders as the bit-exact `re,im` hex-float pair used on the command line.
impl fmt::Display for Complex64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{}",
            format_hexfloat(self.re),
            format_hexfloat(self.im)
        )
    }
}
