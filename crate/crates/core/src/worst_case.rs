//! Extremal inputs: the shortest bases that force `k` reduction steps.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{GramMatrix, ReducedClass};
use crate::matrix::UnimodularMatrix;
use crate::rewrite::is_reduced_word;
use crate::scalar::{ratio_to_f64, Scalar};
use crate::word::{for_each_word, GaussWord};

/// `1 + √2`.
pub const SILVER: f64 = 1.0 + std::f64::consts::SQRT_2;

/// Sign of the Gram–Schmidt coefficient, which selects the strict-generic case.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MuSign {
    NonNegative,
    Negative,
}

impl MuSign {
    pub fn of<F: Scalar>(g: &GramMatrix<F>) -> Self {
        if g.g12().is_negative() {
            MuSign::Negative
        } else {
            MuSign::NonNegative
        }
    }
}

/// The length-`k` reduced word of least `ℓ` for a reduced basis of class `c`.
pub fn extremal_word(k: i64, c: ReducedClass, mu: MuSign) -> Result<GaussWord> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let k = k as usize;
    let (fill, last) = match (c, mu) {
        (ReducedClass::StrictGeneric, MuSign::NonNegative) => (-2, 0),
        (ReducedClass::StrictGeneric, MuSign::Negative) => (2, 0),
        (ReducedClass::StrictHalf, _) => (-2, 1),
        (ReducedClass::EqualGeneric | ReducedClass::EqualHalf, _) => (-2, -1),
    };
    let mut body = vec![fill; k - 1];
    body.push(last);
    GaussWord::new(0, &body)
}

fn check_class<F: Scalar>(c: ReducedClass, r: &GramMatrix<F>) -> Result<()> {
    let found = r.classify()?;
    if found != c {
        return Err(Error::ClassMismatch { expected: c.to_string(), found: found.to_string() });
    }
    Ok(())
}

/// Gram matrix of the extremal input `ω·R`.
pub fn extremal_input<F: Scalar>(k: i64, c: ReducedClass, r: &GramMatrix<F>) -> Result<GramMatrix<F>> {
    check_class(c, r)?;
    Ok(r.apply_transform(&extremal_word(k, c, MuSign::of(r))?.eval()))
}

/// `g(k)`: the least `ℓ` of an input demanding `k` steps and reducing to `R`.
pub fn g_of_k<F: Scalar>(k: i64, c: ReducedClass, r: &GramMatrix<F>) -> Result<F> {
    Ok(extremal_input(k, c, r)?.ell())
}

/// Exhaustive minimum of `ℓ(ω·R)` over reduced words of length `k` with `|x_i| <= exp_bound`.
///
/// Ties keep the first word in enumeration order.
pub fn brute_force_min<F: Scalar>(
    k: usize,
    c: ReducedClass,
    r: &GramMatrix<F>,
    exp_bound: i64,
) -> Result<(GaussWord, F)> {
    check_class(c, r)?;
    let mut best: Option<(GaussWord, F)> = None;
    for_each_word(k, exp_bound, |w| {
        if !is_reduced_word(w, c) {
            return;
        }
        let v = r.apply_transform(&w.eval()).ell();
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((w.clone(), v));
        }
    });
    best.ok_or(Error::BoundTooSmall { k, bound: exp_bound })
}

/// `(ST²)^k = [[α, β], [β, γ]]`.
#[derive(Clone, PartialEq, Debug)]
pub struct GrowthRow {
    pub k: usize,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    /// `α_k / α_{k-1}`, absent at `k = 1`.
    pub ratio: Option<f64>,
}

/// Powers of `ST²` and of `ST⁻²`, checking their symmetric shape and `α = 2β + γ`.
pub fn growth_check(k_max: usize) -> Result<Vec<GrowthRow>> {
    let st2 = UnimodularMatrix::s() * UnimodularMatrix::t_pow(2);
    let stm2 = UnimodularMatrix::s() * UnimodularMatrix::t_pow(-2);
    let (mut p, mut q) = (UnimodularMatrix::identity(), UnimodularMatrix::identity());
    let mut rows: Vec<GrowthRow> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        p = &p * &st2;
        q = &q * &stm2;
        let (alpha, beta, gamma) = (p.a().clone(), p.b().clone(), p.d().clone());
        if p.c() != &beta || alpha != &beta * 2 + &gamma {
            return Err(Error::Domain(format!("(ST^2)^{k} = {p} breaks alpha = 2 beta + gamma")));
        }
        let s: BigInt = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let expect = [&s * &alpha, -&s * &beta, -&s * &beta, &s * &gamma];
        if q.entries().into_iter().zip(expect.iter()).any(|(a, b)| a != b) {
            return Err(Error::Domain(format!("(ST^-2)^{k} = {q} is not the signed mirror")));
        }
        let ratio = rows.last().map(|prev| ratio_to_f64(&alpha, &prev.alpha));
        rows.push(GrowthRow { k, alpha, beta, gamma, ratio });
    }
    Ok(rows)
}

/// `(1+√2)^n = p + q√2`, as a sequence starting at `n = 0`.
fn silver_powers() -> impl Iterator<Item = (BigInt, BigInt)> {
    std::iter::successors(Some((BigInt::one(), BigInt::zero())), |(p, q)| {
        Some((p + q * 2, p + q))
    })
}

/// Whether `(1+√2)^n = p + q√2 <= x`, decided exactly.
fn silver_le(p: &BigInt, q: &BigInt, x: &BigRational) -> bool {
    let rest = x - BigRational::from_integer(p.clone());
    if rest.is_negative() {
        return false;
    }
    let q2 = BigRational::from_integer(q * q * 2);
    q2 <= &rest * &rest
}

/// `floor(log_{1+√2}(M / A))`, the largest `n` with `A (1+√2)^n <= M`, with exact comparisons.
pub fn max_steps_bound_exact(m: &BigRational, a: &BigRational) -> Result<u64> {
    if !a.is_positive() || m <= a {
        return Err(Error::Domain(format!("need M > A > 0, got M = {m}, A = {a}")));
    }
    let ratio = m / a;
    let n = silver_powers()
        .skip(1)
        .take_while(|(p, q)| silver_le(p, q, &ratio))
        .count();
    Ok(n as u64)
}

/// As [`max_steps_bound_exact`], with `A` given as a decimal and taken at its exact binary value.
pub fn max_steps_bound(m: &BigRational, a: f64) -> Result<u64> {
    let a = BigRational::from_float(a)
        .ok_or_else(|| Error::Domain(format!("A = {a} is not finite")))?;
    max_steps_bound_exact(m, &a)
}

/// Least-squares constant for `L_k ≈ A (1+√2)^k`, with `L_k − A (1+√2)^k` per sample.
#[derive(Clone, PartialEq, Debug)]
pub struct FitReport {
    pub a: f64,
    pub residuals: Vec<(usize, f64)>,
}

/// Fits float samples `(k, L_k)` directly.
pub fn fit_a_lengths(samples: &[(usize, f64)]) -> Result<FitReport> {
    if samples.is_empty() {
        return Err(Error::Domain("empty fit range".into()));
    }
    let (mut num, mut den) = (0.0, 0.0);
    for &(k, l) in samples {
        let r = SILVER.powi(k as i32);
        num += l * r;
        den += r * r;
    }
    let a = num / den;
    let residuals = samples.iter().map(|&(k, l)| (k, l - a * SILVER.powi(k as i32))).collect();
    Ok(FitReport { a, residuals })
}

/// Decimal digits carried by the fixed-point fit; far above f64 resolution.
const FIT_DIGITS: u32 = 60;

fn fixed_sqrt(x: &BigRational, scale: &BigInt) -> BigRational {
    // sqrt(p/q) = sqrt(p q) / q, evaluated on integers scaled by 10^FIT_DIGITS
    let pq = x.numer() * x.denom() * scale * scale;
    BigRational::new(pq.sqrt(), x.denom() * scale)
}

/// Fits exact squared lengths `(k, L_k^2)` in high-precision fixed point.
pub fn fit_a_exact(samples: &[(usize, BigRational)]) -> Result<FitReport> {
    if samples.is_empty() {
        return Err(Error::Domain("empty fit range".into()));
    }
    let scale = BigInt::from(10).pow(FIT_DIGITS);
    let sqrt2 = fixed_sqrt(&BigRational::from_integer(BigInt::from(2)), &scale);
    let kmax = samples.iter().map(|s| s.0).max().unwrap();
    let powers: Vec<BigRational> = silver_powers()
        .take(kmax + 1)
        .map(|(p, q)| BigRational::from_integer(p) + BigRational::from_integer(q) * &sqrt2)
        .collect();
    let lengths: Vec<BigRational> = samples.iter().map(|(_, l2)| fixed_sqrt(l2, &scale)).collect();
    let (mut num, mut den) = (BigRational::zero(), BigRational::zero());
    for ((k, _), l) in samples.iter().zip(&lengths) {
        num += l * &powers[*k];
        den += &powers[*k] * &powers[*k];
    }
    let a = num / den;
    let residuals = samples
        .iter()
        .zip(&lengths)
        .map(|((k, _), l)| {
            let r = l - &a * &powers[*k];
            (*k, ratio_to_f64(r.numer(), r.denom()))
        })
        .collect();
    Ok(FitReport { a: ratio_to_f64(a.numer(), a.denom()), residuals })
}

/// Fits `A` on the extremal inputs of class `c` over `ks`, using `L_k^2 = basis_length_sq`.
pub fn fit_a(ks: RangeInclusive<usize>, c: ReducedClass) -> Result<FitReport> {
    let r: GramMatrix<BigRational> = c.reference_gram();
    let mut samples = Vec::new();
    for k in ks {
        let g = extremal_input(k as i64, c, &r)?;
        samples.push((k, g.basis_length_sq()));
    }
    fit_a_exact(&samples)
}

/// One row of the worst-case table.
#[derive(Clone, PartialEq, Debug)]
pub struct WorstCaseReport {
    pub k: usize,
    pub word: GaussWord,
    pub matrix: UnimodularMatrix,
    pub ell_value: BigRational,
    pub length_sq: BigRational,
    /// `ℓ(k) / ℓ(k−1)`, absent at `k = 1`.
    pub ratio: Option<f64>,
}

/// Rows `k = 1..=k_max` on the class's reference Gram matrix.
pub fn worst_case_reports(k_max: i64, c: ReducedClass) -> Result<Vec<WorstCaseReport>> {
    if k_max < 1 {
        return Err(Error::InvalidK(k_max));
    }
    let r: GramMatrix<BigRational> = c.reference_gram();
    let mut out: Vec<WorstCaseReport> = Vec::new();
    for k in 1..=k_max {
        let word = extremal_word(k, c, MuSign::of(&r))?;
        let matrix = word.eval();
        let g = r.apply_transform(&matrix);
        let ell_value = g.ell();
        let ratio = out
            .last()
            .map(|p| (&ell_value / &p.ell_value).to_f64().unwrap_or(f64::NAN));
        out.push(WorstCaseReport {
            k: k as usize,
            word,
            matrix,
            length_sq: g.basis_length_sq(),
            ell_value,
            ratio,
        });
    }
    Ok(out)
}
