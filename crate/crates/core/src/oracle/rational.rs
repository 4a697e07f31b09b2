use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fpkit::format::pow2;

/// Every finite binary64 is an integer multiple of `2^SCALE_EXP`.
pub const SCALE_EXP: i32 = -1074;

/// An exact rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: BigInt,
    den: BigUint,
}

impl ExactRational {
    /// Builds `num / den` in lowest terms. Returns `None` when `den` is zero.
    pub fn new(num: BigInt, den: BigUint) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let mut q = Self { num, den };
        q.reduce();
        Some(q)
    }

    pub fn zero() -> Self {
        Self {
            num: BigInt::zero(),
            den: BigUint::one(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self {
            num: n.into(),
            den: BigUint::one(),
        }
    }

    /// `m * 2^exp`.
    pub fn from_scaled_integer(m: BigInt, exp: i32) -> Self {
        if exp >= 0 {
            Self::from_integer(m << exp as u32)
        } else {
            Self::new(m, BigUint::one() << exp.unsigned_abs()).expect("nonzero")
        }
    }

    /// The exact value of a finite binary64; `None` for NaN and infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        let m = scaled_integer(x)?;
        Some(Self::from_scaled_integer(m, SCALE_EXP))
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    /// `floor(log2(|q|))`; panics on zero.
    pub fn floor_log2(&self) -> i64 {
        assert!(!self.is_zero(), "log2 of zero");
        floor_log2_parts(self.num.magnitude(), &self.den)
    }

    /// `ceil(log2(|q|))`; panics on zero.
    pub fn ceil_log2(&self) -> i64 {
        let k = self.floor_log2();
        if self.num.magnitude().is_one() && self.den.count_ones() == 1
            || self.den.is_one() && self.num.magnitude().count_ones() == 1
        {
            k
        } else {
            k + 1
        }
    }

    /// Nearest binary64, ties to even, with gradual underflow and overflow
    /// to infinity.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &self.den)
    }

    /// Rounds to `bits` significant bits with an unbounded exponent range.
    pub fn round_to_precision(&self, bits: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lsb = self.floor_log2() - (i64::from(bits) - 1);
        let lsb = i32::try_from(lsb).expect("exponent range");
        let m = BigInt::from(round_at_parts(self.num.magnitude(), &self.den, lsb));
        let m = if self.is_negative() { -m } else { m };
        Self::from_scaled_integer(m, lsb)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = BigUint::one();
            return;
        }
        let g = self.num.magnitude().gcd(&self.den);
        if !g.is_one() {
            self.num = BigInt::from_biguint(self.num.sign(), self.num.magnitude() / &g);
            self.den = &self.den / &g;
        }
    }
}

// The helpers below depend only on the value of `n / d`, so they also serve
// callers holding a fraction that is not in lowest terms.

fn floor_log2_parts(n: &BigUint, d: &BigUint) -> i64 {
    let k = n.bits() as i64 - d.bits() as i64;
    let ge = if k >= 0 {
        *n >= d << k as u64
    } else {
        n << (-k) as u64 >= *d
    };
    if ge {
        k
    } else {
        k - 1
    }
}

/// `ceil(log2(n / d))` for positive `n`, `d`.
pub(crate) fn ceil_log2_parts(n: &BigUint, d: &BigUint) -> i64 {
    let k = floor_log2_parts(n, d);
    let exact = if k >= 0 {
        *n == d << k as u64
    } else {
        n << (-k) as u64 == *d
    };
    if exact {
        k
    } else {
        k + 1
    }
}

/// `round(n / d / 2^lsb)` to nearest, ties to even.
fn round_at_parts(n: &BigUint, d: &BigUint, lsb: i32) -> BigUint {
    let (quot, rem, divisor) = if lsb >= 0 {
        let divisor = d << lsb as u32;
        let (q, r) = n.div_rem(&divisor);
        (q, r, divisor)
    } else {
        let (q, r) = (n << lsb.unsigned_abs()).div_rem(d);
        (q, r, d.clone())
    };
    let twice = rem << 1u32;
    match twice.cmp(&divisor) {
        Ordering::Greater => quot + 1u32,
        Ordering::Equal if quot.bit(0) => quot + 1u32,
        _ => quot,
    }
}

/// Nearest binary64 to `num / den` (`den > 0`, any common factors allowed),
/// after first rounding to `precision` significant bits when given.
pub(crate) fn ratio_to_f64_via(num: &BigInt, den: &BigUint, precision: Option<u32>) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let signed = |v: f64| if num.is_negative() { -v } else { v };
    let n = num.magnitude();
    let k = floor_log2_parts(n, den);
    if let Some(bits) = precision {
        let lsb = i32::try_from(k - (i64::from(bits) - 1)).expect("exponent range");
        let m = round_at_parts(n, den, lsb);
        let (n, den) = if lsb >= 0 {
            (m << lsb as u32, BigUint::one())
        } else {
            (m, BigUint::one() << lsb.unsigned_abs())
        };
        return signed(ratio_to_f64_via(&BigInt::from(n), &den, None));
    }
    if k >= 1024 {
        return signed(f64::INFINITY);
    }
    if k < -1076 {
        return signed(0.0);
    }
    let lsb = (k - 52).max(SCALE_EXP as i64) as i32;
    let m = round_at_parts(n, den, lsb).to_u64().expect("at most 2^53");
    // m <= 2^53 and lsb >= -1074, so the product is exact unless it
    // overflows, which is the correct rounding for that case.
    signed(m as f64 * pow2(lsb))
}

pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigUint) -> f64 {
    ratio_to_f64_via(num, den, None)
}

/// `x * 2^1074` as an integer, for finite `x`.
pub fn scaled_integer(x: f64) -> Option<BigInt> {
    if !x.is_finite() {
        return None;
    }
    let bits = x.to_bits();
    let biased = (bits >> 52) & 0x7ff;
    let frac = bits & 0x000f_ffff_ffff_ffff;
    let mag = if biased == 0 {
        BigUint::from(frac)
    } else {
        BigUint::from(frac | (1u64 << 52)) << (biased - 1) as u32
    };
    let sign = if x.is_sign_negative() && !mag.is_zero() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    Some(BigInt::from_biguint(sign, mag))
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = &self.num * BigInt::from(other.den.clone());
        let rhs = &other.num * BigInt::from(self.den.clone());
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        Self {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Add for &ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> ExactRational {
        let num =
            &self.num * BigInt::from(rhs.den.clone()) + &rhs.num * BigInt::from(self.den.clone());
        ExactRational::new(num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> ExactRational {
        let num =
            &self.num * BigInt::from(rhs.den.clone()) - &rhs.num * BigInt::from(self.den.clone());
        ExactRational::new(num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Mul for &ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: Self) -> ExactRational {
        ExactRational::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Div for &ExactRational {
    type Output = ExactRational;
    /// Panics when `rhs` is zero.
    fn div(self, rhs: Self) -> ExactRational {
        assert!(!rhs.is_zero(), "division by zero");
        let sign = if rhs.num.is_negative() { -1 } else { 1 };
        let num = &self.num * BigInt::from(rhs.den.clone()) * sign;
        ExactRational::new(num, &self.den * rhs.num.magnitude()).expect("nonzero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: Self) -> ExactRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);
