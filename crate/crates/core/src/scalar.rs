//! Scalar field abstraction for Gram-matrix geometry.
//!
//! All predicates used by the reduction (properness, the `-1/2` tie, length
//! comparisons) are exact for the rational implementations. `f32` and `f64`
//! are provided for quick exploration and plotting only; comparisons against
//! `-1/2` are then subject to rounding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An ordered field in which Gram entries live.
pub trait Scalar:
    Clone + PartialOrd + Num + Signed + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync
{
    /// Whether comparisons on this type are exact.
    const EXACT: bool;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_big_rational(q: &BigRational) -> Self {
        Self::from_bigint(q.numer()) / Self::from_bigint(q.denom())
    }

    /// `floor(self)` as an `i64`, or `None` when it does not fit.
    fn floor_i64(&self) -> Option<i64>;

    fn to_f64_lossy(&self) -> f64;

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn from_i64_exact(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type represents i64 values")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.clone())
    }

    fn floor_i64(&self) -> Option<i64> {
        self.numer().div_floor(self.denom()).to_i64()
    }

    fn to_f64_lossy(&self) -> f64 {
        ratio_to_f64(self.numer(), self.denom())
    }
}

macro_rules! impl_machine_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            const EXACT: bool = true;

            fn from_bigint(n: &BigInt) -> Self {
                Ratio::from_integer(
                    n.to_string()
                        .parse::<$int>()
                        .expect("integer exceeds the machine rational range"),
                )
            }

            fn floor_i64(&self) -> Option<i64> {
                self.numer().div_floor(self.denom()).to_i64()
            }

            fn to_f64_lossy(&self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }
        }
    };
}

impl_machine_ratio!(i64);
impl_machine_ratio!(i128);

macro_rules! impl_float {
    ($f:ty) => {
        impl Scalar for $f {
            const EXACT: bool = false;

            fn from_bigint(n: &BigInt) -> Self {
                n.to_f64().map(|v| v as $f).unwrap_or(<$f>::NAN)
            }

            fn floor_i64(&self) -> Option<i64> {
                let f = self.floor() as f64;
                if f.is_finite() && f >= i64::MIN as f64 && f < i64::MAX as f64 {
                    Some(f as i64)
                } else {
                    None
                }
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float!(f32);
impl_float!(f64);

/// Converts `n / d` to the nearest-ish `f64` without overflowing on huge operands.
pub(crate) fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
            let a = (n >> shift).to_f64().unwrap_or(f64::NAN);
            let b = (d >> shift).to_f64().unwrap_or(f64::NAN);
            a / b
        }
    }
}

/// Parses `p/q` or an integer into a big rational.
pub fn parse_rational(token: &str) -> Option<BigRational> {
    let token = token.trim();
    if token.is_empty() {
        return None;
    }
    match token.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str_radix(p, 10).ok()?;
            let q = BigInt::from_str_radix(q, 10).ok()?;
            if q == BigInt::from(0) {
                None
            } else {
                Some(Ratio::new(p, q))
            }
        }
        None => BigInt::from_str_radix(token, 10).ok().map(Ratio::from_integer),
    }
}
