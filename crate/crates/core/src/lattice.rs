//! Two-dimensional lattice bases held as Gram matrices.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::matrix::UnimodularMatrix;
use crate::scalar::{parse_rational, Scalar};

/// The four shapes a reduced basis can take.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ReducedClass {
    /// `|b1| < |b2|` and `m != -1/2`.
    StrictGeneric,
    /// `|b1| = |b2|` and `m != -1/2`.
    EqualGeneric,
    /// `|b1| < |b2|` and `m = -1/2`.
    StrictHalf,
    /// `|b1| = |b2|` and `m = -1/2` (hexagonal).
    EqualHalf,
}

impl ReducedClass {
    pub const ALL: [ReducedClass; 4] = [
        ReducedClass::StrictGeneric,
        ReducedClass::EqualGeneric,
        ReducedClass::StrictHalf,
        ReducedClass::EqualHalf,
    ];

    /// Kebab-case name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            ReducedClass::StrictGeneric => "strict-generic",
            ReducedClass::EqualGeneric => "equal-generic",
            ReducedClass::StrictHalf => "strict-half",
            ReducedClass::EqualHalf => "equal-half",
        }
    }

    pub fn is_half(self) -> bool {
        matches!(self, ReducedClass::StrictHalf | ReducedClass::EqualHalf)
    }

    pub fn is_equal(self) -> bool {
        matches!(self, ReducedClass::EqualGeneric | ReducedClass::EqualHalf)
    }

    /// Smallest-entry rational Gram matrix realizing the class.
    pub fn reference_gram<F: Scalar>(self) -> GramMatrix<F> {
        let (a, b, c) = match self {
            ReducedClass::StrictGeneric => (1, 0, 4),
            ReducedClass::EqualGeneric => (1, 0, 1),
            ReducedClass::StrictHalf => (4, -2, 5),
            ReducedClass::EqualHalf => (2, -1, 2),
        };
        GramMatrix::from_i64(a, b, c).expect("reference grams are positive definite")
    }
}

impl fmt::Display for ReducedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReducedClass::StrictGeneric => "StrictGeneric",
            ReducedClass::EqualGeneric => "EqualGeneric",
            ReducedClass::StrictHalf => "StrictHalf",
            ReducedClass::EqualHalf => "EqualHalf",
        };
        f.write_str(s)
    }
}

impl FromStr for ReducedClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        match key.to_ascii_lowercase().as_str() {
            "strictgeneric" => Ok(ReducedClass::StrictGeneric),
            "equalgeneric" => Ok(ReducedClass::EqualGeneric),
            "stricthalf" => Ok(ReducedClass::StrictHalf),
            "equalhalf" => Ok(ReducedClass::EqualHalf),
            _ => Err(Error::Parse(format!("unknown class {s:?}"))),
        }
    }
}

/// Inner products `(g11, g12, g22)` of an ordered basis, positive definite.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GramMatrix<F> {
    g11: F,
    g12: F,
    g22: F,
}

impl<F: Scalar> GramMatrix<F> {
    pub fn new(g11: F, g12: F, g22: F) -> Result<Self> {
        let det = g11.clone() * g22.clone() - g12.clone() * g12.clone();
        if !(g11 > F::zero() && g22 > F::zero() && det > F::zero()) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { g11, g12, g22 })
    }

    pub(crate) fn new_unchecked(g11: F, g12: F, g22: F) -> Self {
        Self { g11, g12, g22 }
    }

    pub fn from_i64(g11: i64, g12: i64, g22: i64) -> Result<Self> {
        Self::new(F::from_i64_exact(g11), F::from_i64_exact(g12), F::from_i64_exact(g22))
    }

    pub fn g11(&self) -> &F {
        &self.g11
    }
    pub fn g12(&self) -> &F {
        &self.g12
    }
    pub fn g22(&self) -> &F {
        &self.g22
    }

    pub fn det(&self) -> F {
        self.g11.clone() * self.g22.clone() - self.g12.clone() * self.g12.clone()
    }

    /// Gram–Schmidt coefficient `m = g12 / g11`.
    pub fn mu(&self) -> F {
        self.g12.clone() / self.g11.clone()
    }

    /// `|b2*|^2 = g22 - g12^2 / g11`.
    pub fn b2_star_sq(&self) -> F {
        self.det() / self.g11.clone()
    }

    /// `-1/2 <= m < 1/2`.
    pub fn is_proper(&self) -> bool {
        // compared as 2·g12 against ±g11 to avoid a division
        let two_b = self.g12.clone() + self.g12.clone();
        -self.g11.clone() <= two_b && two_b < self.g11
    }

    pub fn is_reduced(&self) -> bool {
        self.is_proper() && self.g11 <= self.g22
    }

    pub fn classify(&self) -> Result<ReducedClass> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let half = self.g12.clone() + self.g12.clone() == -self.g11.clone();
        let equal = self.g11 == self.g22;
        Ok(match (equal, half) {
            (false, false) => ReducedClass::StrictGeneric,
            (true, false) => ReducedClass::EqualGeneric,
            (false, true) => ReducedClass::StrictHalf,
            (true, true) => ReducedClass::EqualHalf,
        })
    }

    /// Congruence `U G Uᵀ`: the Gram matrix of the basis `U·B`.
    pub fn apply_transform(&self, u: &UnimodularMatrix) -> Self {
        let [a, b, c, d] = u.entries();
        let k = |x: num_bigint::BigInt| F::from_bigint(&x);
        let g11 = k(a * a) * self.g11.clone()
            + k(a * b * 2) * self.g12.clone()
            + k(b * b) * self.g22.clone();
        let g12 = k(a * c) * self.g11.clone()
            + k(a * d + b * c) * self.g12.clone()
            + k(b * d) * self.g22.clone();
        let g22 = k(c * c) * self.g11.clone()
            + k(c * d * 2) * self.g12.clone()
            + k(d * d) * self.g22.clone();
        Self::new_unchecked(g11, g12, g22)
    }

    /// `ℓ = |b1|^2 + |b2|^2`.
    pub fn ell(&self) -> F {
        self.g11.clone() + self.g22.clone()
    }

    /// `max(|b1|, |b2|)^2`.
    pub fn basis_length_sq(&self) -> F {
        if self.g11 >= self.g22 {
            self.g11.clone()
        } else {
            self.g22.clone()
        }
    }
}

impl GramMatrix<BigRational> {
    /// Converts to another scalar type.
    pub fn to_scalar<G: Scalar>(&self) -> GramMatrix<G> {
        GramMatrix::new_unchecked(
            G::from_big_rational(&self.g11),
            G::from_big_rational(&self.g12),
            G::from_big_rational(&self.g22),
        )
    }
}

impl<F: Scalar> fmt::Display for GramMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.g11, self.g12, self.g22)
    }
}

impl FromStr for GramMatrix<BigRational> {
    type Err = Error;

    /// Parses `"g11 g12 g22"`, each entry an integer or `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three gram entries, got {}", parts.len())));
        }
        let mut v = Vec::with_capacity(3);
        for p in parts {
            v.push(parse_rational(p).ok_or_else(|| Error::Parse(format!("bad rational {p:?}")))?);
        }
        let g22 = v.pop().unwrap();
        let g12 = v.pop().unwrap();
        let g11 = v.pop().unwrap();
        GramMatrix::new(g11, g12, g22)
    }
}

/// An ordered basis given by coordinates in the canonical basis of ℝ².
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Basis2D<F> {
    b1: [F; 2],
    b2: [F; 2],
}

impl<F: Scalar> Basis2D<F> {
    pub fn new(b1: [F; 2], b2: [F; 2]) -> Result<Self> {
        let det = b1[0].clone() * b2[1].clone() - b1[1].clone() * b2[0].clone();
        if det.is_zero() {
            return Err(Error::DependentVectors);
        }
        Ok(Self { b1, b2 })
    }

    pub fn b1(&self) -> &[F; 2] {
        &self.b1
    }
    pub fn b2(&self) -> &[F; 2] {
        &self.b2
    }
}

impl FromStr for Basis2D<BigRational> {
    type Err = Error;

    /// Parses `"x1 y1 ; x2 y2"`.
    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse("basis needs two rows separated by ';'".into()))?;
        let row = |t: &str| -> Result<[BigRational; 2]> {
            let xs: Vec<&str> = t.split_whitespace().collect();
            if xs.len() != 2 {
                return Err(Error::Parse(format!("basis row {t:?} needs two coordinates")));
            }
            let p = |x: &str| parse_rational(x).ok_or_else(|| Error::Parse(format!("bad rational {x:?}")));
            Ok([p(xs[0])?, p(xs[1])?])
        };
        Basis2D::new(row(l)?, row(r)?)
    }
}

fn dot<F: Scalar>(u: &[F; 2], v: &[F; 2]) -> F {
    u[0].clone() * v[0].clone() + u[1].clone() * v[1].clone()
}

pub fn gram_of_basis<F: Scalar>(b: &Basis2D<F>) -> GramMatrix<F> {
    // Basis2D::new already rejected dependent pairs, so the result is definite
    GramMatrix::new_unchecked(dot(&b.b1, &b.b1), dot(&b.b1, &b.b2), dot(&b.b2, &b.b2))
}

/// The integer `x` with `m - x` in `[-1/2, 1/2)`, i.e. `floor(m + 1/2)`.
pub fn nearest_translation<F: Scalar>(m: &F) -> Result<i64> {
    (m.clone() + F::half()).floor_i64().ok_or(Error::ExponentOverflow)
}

/// Either a Gram triple or a coordinate basis, as accepted on the command line.
pub fn parse_gram_or_basis(s: &str) -> Result<GramMatrix<BigRational>> {
    if s.contains(';') {
        Ok(gram_of_basis(&s.parse::<Basis2D<BigRational>>()?))
    } else {
        s.parse()
    }
}
