//! 2×2 integer matrices of determinant ±1.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major `[[a, b], [c, d]]` with `ad - bc = ±1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnimodularMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if det.abs() != BigInt::one() {
            return Err(Error::Domain(format!("determinant {det} is not ±1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub(crate) fn from_parts_unchecked(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).abs().is_one());
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::from_parts_unchecked(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// The swap `[[0,1],[1,0]]`.
    pub fn s() -> Self {
        Self::from_parts_unchecked(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// `T^x = [[1,0],[x,1]]`, which adds `x·b1` to `b2`.
    pub fn t_pow(x: i64) -> Self {
        Self::from_parts_unchecked(BigInt::one(), BigInt::zero(), BigInt::from(x), BigInt::one())
    }

    pub fn neg_identity() -> Self {
        Self::from_parts_unchecked(-BigInt::one(), BigInt::zero(), BigInt::zero(), -BigInt::one())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        // adj / det with det = ±1
        if self.det().is_positive() {
            Self::from_parts_unchecked(self.d.clone(), -&self.b, -&self.c, self.a.clone())
        } else {
            Self::from_parts_unchecked(-&self.d, self.b.clone(), self.c.clone(), -&self.a)
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_parts_unchecked(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_parts_unchecked(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// Right multiplication by `S` swaps the columns.
    pub(crate) fn mul_s_in_place(&mut self) {
        std::mem::swap(&mut self.a, &mut self.b);
        std::mem::swap(&mut self.c, &mut self.d);
    }

    /// Right multiplication by `T^x`.
    pub(crate) fn mul_t_in_place(&mut self, x: i64) {
        if x != 0 {
            self.a += &self.b * x;
            self.c += &self.d * x;
        }
    }

    /// Largest absolute entry, in bits.
    pub fn max_bits(&self) -> u64 {
        self.entries().iter().map(|e| e.bits()).max().unwrap_or(0)
    }
}

impl Mul for &UnimodularMatrix {
    type Output = UnimodularMatrix;

    fn mul(self, o: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix::from_parts_unchecked(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for UnimodularMatrix {
    type Output = UnimodularMatrix;

    fn mul(self, o: UnimodularMatrix) -> UnimodularMatrix {
        &self * &o
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}
