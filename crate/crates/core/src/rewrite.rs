//! Class-indexed rewrite systems whose normal forms are Gaussian words.
//!
//! A word `ω` describes the input `ω·R` for a reduced basis `R` of a given
//! class. Rewriting preserves that input up to a factor fixing `R`, and the
//! normal form is the decomposition the reduction algorithm would output.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::lattice::ReducedClass;
use crate::matrix::UnimodularMatrix;
use crate::word::{canon, GaussWord};

/// Upper bound on rule applications in one normalization.
pub const MAX_REWRITE_STEPS: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RuleId {
    /// `S S → 1`; applied implicitly by canonicalization.
    R1,
    /// `T^x T^y → T^{x+y}`; applied implicitly by canonicalization.
    R2,
    /// `S T^2 S T^x → T S T^-2 S T^{x+1}` for `x < 0`.
    R3,
    /// `S T^-2 S T^x → T^-1 S T^2 S T^{x-1}` for `x > 0`.
    R4,
    /// `S T S T^x ω → T S T^{-x-1} ω⁻`.
    R5,
    /// `S T^-1 S T^x ω → T^-1 S T^{-x+1} ω⁻`.
    R6,
    /// As `R5` with one extra `T` at the end of the word.
    R53,
    /// As `R6` with one extra `T` at the end of the word.
    R63,
    /// Trailing `S → 1`.
    R83,
    /// Trailing `S T → T S T^-1`.
    R93,
    /// Trailing `S T^2 S → T S T^-2 S T`.
    R7,
    /// Trailing `S → 1`.
    R101,
    /// Trailing `S T → T`.
    R102,
    /// Trailing `S T^2 → T S T^-1`.
    R103,
}

impl RuleId {
    /// Rules that only match at the very end of the word.
    pub fn is_end_rule(self) -> bool {
        matches!(
            self,
            RuleId::R83 | RuleId::R93 | RuleId::R7 | RuleId::R101 | RuleId::R102 | RuleId::R103
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            RuleId::R1,
            RuleId::R2,
            RuleId::R3,
            RuleId::R4,
            RuleId::R5,
            RuleId::R6,
            RuleId::R53,
            RuleId::R63,
            RuleId::R83,
            RuleId::R93,
            RuleId::R7,
            RuleId::R101,
            RuleId::R102,
            RuleId::R103,
        ];
        all.into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown rule {s:?}")))
    }
}

/// Middle rules usable in each class, then end rules, in priority order.
fn rule_table(c: ReducedClass) -> (&'static [RuleId], &'static [RuleId]) {
    use RuleId::*;
    match c {
        ReducedClass::StrictGeneric => (&[R3, R4, R5, R6], &[]),
        ReducedClass::EqualGeneric => (&[R3, R4, R5, R6], &[R83, R93]),
        ReducedClass::StrictHalf => (&[R3, R4, R53, R63], &[R7]),
        ReducedClass::EqualHalf => (&[R3, R4, R53, R63], &[R101, R102, R103]),
    }
}

/// `{I, −I, D, −D}` with `D = diag(−1, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SignFactor {
    I,
    NegI,
    D,
    NegD,
}

impl SignFactor {
    fn bits(self) -> (bool, bool) {
        // (overall sign flipped, D component present)
        match self {
            SignFactor::I => (false, false),
            SignFactor::NegI => (true, false),
            SignFactor::D => (false, true),
            SignFactor::NegD => (true, true),
        }
    }

    fn from_bits(neg: bool, d: bool) -> Self {
        match (neg, d) {
            (false, false) => SignFactor::I,
            (true, false) => SignFactor::NegI,
            (false, true) => SignFactor::D,
            (true, true) => SignFactor::NegD,
        }
    }

    pub fn negate(self) -> Self {
        let (n, d) = self.bits();
        Self::from_bits(!n, d)
    }

    pub fn matrix(self) -> UnimodularMatrix {
        let (n, d) = self.bits();
        let s = if n { -1 } else { 1 };
        let a = if d { -s } else { s };
        UnimodularMatrix::from_i64(a, 0, 0, s).expect("diagonal ±1")
    }

    /// `E X E`, which equals `E X E⁻¹` since every sign factor is an involution.
    pub fn conjugate(self, x: &UnimodularMatrix) -> UnimodularMatrix {
        if self.bits().1 {
            UnimodularMatrix::from_parts_unchecked(
                x.a().clone(),
                -x.b(),
                -x.c(),
                x.d().clone(),
            )
        } else {
            x.clone()
        }
    }
}

impl std::ops::Mul for SignFactor {
    type Output = SignFactor;

    fn mul(self, o: SignFactor) -> SignFactor {
        let (n1, d1) = self.bits();
        let (n2, d2) = o.bits();
        SignFactor::from_bits(n1 ^ n2, d1 ^ d2)
    }
}

impl fmt::Display for SignFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignFactor::I => "I",
            SignFactor::NegI => "-I",
            SignFactor::D => "D",
            SignFactor::NegD => "-D",
        })
    }
}

/// A rule occurrence; `position` is the body index of the pattern's first `S` factor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Redex {
    pub position: usize,
    pub rule: RuleId,
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.rule, self.position)
    }
}

/// Result of one rewrite; `eval(before) = eval(word) · symmetry · sign`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleApplication {
    pub word: GaussWord,
    pub sign: SignFactor,
    pub symmetry: UnimodularMatrix,
}

fn mid_matches(e: &[i64], i: usize, rule: RuleId, class: Option<ReducedClass>) -> bool {
    let n = e.len();
    if i == 0 || i + 1 >= n {
        return false;
    }
    let (y, x) = (e[i], e[i + 1]);
    let last = i + 1 == n - 1;
    match rule {
        RuleId::R3 => y == 2 && x < 0,
        // in StrictHalf the tail S T^-2 S T is what rule (7) produces, and it stays
        RuleId::R4 => y == -2 && x > 0 && !(class == Some(ReducedClass::StrictHalf) && last && x == 1),
        RuleId::R5 | RuleId::R53 => y == 1,
        RuleId::R6 | RuleId::R63 => y == -1,
        _ => false,
    }
}

fn end_matches(e: &[i64], rule: RuleId) -> bool {
    let n = e.len();
    if n < 2 {
        return false;
    }
    let last = e[n - 1];
    match rule {
        RuleId::R83 | RuleId::R101 => last == 0,
        RuleId::R93 | RuleId::R102 => last == 1,
        RuleId::R103 => last == 2,
        RuleId::R7 => n >= 3 && e[n - 2] == 2 && last == 0,
        _ => false,
    }
}

fn end_position(e: &[i64], rule: RuleId) -> usize {
    if rule == RuleId::R7 {
        e.len() - 3
    } else {
        e.len() - 2
    }
}

fn mid_redexes(e: &[i64], c: ReducedClass, out: &mut Vec<Redex>) {
    let (mid, _) = rule_table(c);
    for i in 1..e.len().saturating_sub(1) {
        for &r in mid {
            if mid_matches(e, i, r, Some(c)) {
                out.push(Redex { position: i - 1, rule: r });
            }
        }
    }
}

fn end_redexes(e: &[i64], c: ReducedClass, out: &mut Vec<Redex>) {
    let (_, end) = rule_table(c);
    for &r in end {
        if end_matches(e, r) {
            out.push(Redex { position: end_position(e, r), rule: r });
        }
    }
}

/// Leftmost middle redex, or else the first matching end rule.
pub fn find_redex(w: &GaussWord, c: ReducedClass) -> Option<Redex> {
    let e = w.exponents();
    let (mid, end) = rule_table(c);
    for i in 1..e.len().saturating_sub(1) {
        for &r in mid {
            if mid_matches(e, i, r, Some(c)) {
                return Some(Redex { position: i - 1, rule: r });
            }
        }
    }
    end.iter()
        .find(|&&r| end_matches(e, r))
        .map(|&r| Redex { position: end_position(e, r), rule: r })
}

/// Every redex under class `c`, middle rules first.
pub fn all_redexes(w: &GaussWord, c: ReducedClass) -> Vec<Redex> {
    let mut out = Vec::new();
    mid_redexes(w.exponents(), c, &mut out);
    end_redexes(w.exponents(), c, &mut out);
    out
}

pub fn is_reduced_word(w: &GaussWord, c: ReducedClass) -> bool {
    find_redex(w, c).is_none()
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::ExponentOverflow)
}

fn fixed(a: i64, b: i64, c: i64, d: i64) -> UnimodularMatrix {
    UnimodularMatrix::from_i64(a, b, c, d).expect("constant is unimodular")
}

/// Rewrites `w` at `position` with `rule` and re-canonicalizes.
///
/// Only the rule's own pattern is checked here; class restrictions are
/// enforced by [`find_redex`].
pub fn apply_rule(w: &GaussWord, position: usize, rule: RuleId) -> Result<RuleApplication> {
    let e = w.exponents();
    let n = e.len();
    let bad = || Error::InapplicableRule { rule: rule.to_string(), position };
    let identity = UnimodularMatrix::identity();

    if rule.is_end_rule() {
        if !end_matches(e, rule) || end_position(e, rule) != position {
            return Err(bad());
        }
        let mut f = e.to_vec();
        let (sign, symmetry) = match rule {
            RuleId::R83 | RuleId::R101 => {
                f.pop();
                (SignFactor::I, UnimodularMatrix::s())
            }
            RuleId::R93 | RuleId::R103 => {
                f[n - 2] = add(f[n - 2], 1)?;
                f[n - 1] = -1;
                let x = if rule == RuleId::R93 { fixed(0, -1, 1, 0) } else { fixed(-1, -1, 1, 0) };
                (SignFactor::I, x)
            }
            RuleId::R102 => {
                f.pop();
                let last = f.last_mut().unwrap();
                *last = add(*last, 1)?;
                (SignFactor::I, fixed(1, 1, 0, -1))
            }
            RuleId::R7 => {
                f[n - 3] = add(f[n - 3], 1)?;
                f[n - 2] = -2;
                f[n - 1] = 1;
                (SignFactor::NegI, identity)
            }
            _ => unreachable!(),
        };
        return Ok(RuleApplication { word: GaussWord::from_canonical(canon(f)?), sign, symmetry });
    }

    let i = position + 1;
    if !matches!(rule, RuleId::R3 | RuleId::R4 | RuleId::R5 | RuleId::R6 | RuleId::R53 | RuleId::R63)
        || !mid_matches(e, i, rule, None)
    {
        return Err(bad());
    }
    let x = e[i + 1];
    let (word_exps, sign, symmetry) = match rule {
        RuleId::R3 | RuleId::R4 => {
            let s = if rule == RuleId::R3 { 1 } else { -1 };
            let mut f = e.to_vec();
            f[i - 1] = add(f[i - 1], s)?;
            f[i] = -2 * s;
            f[i + 1] = add(x, s)?;
            (f, SignFactor::NegI, identity)
        }
        _ => {
            // S T^s S T^x ω  →  T^s S T^{-x-s} ω⁻, with β = (−1)^{|ω|}
            let s = if matches!(rule, RuleId::R5 | RuleId::R53) { 1 } else { -1 };
            let mut f = Vec::with_capacity(n);
            f.extend_from_slice(&e[..i]);
            f[i - 1] = add(f[i - 1], s)?;
            f.push(add(-x, -s)?);
            f.extend(e[i + 2..].iter().map(|&y| -y));
            let beta_neg = (n - (i + 2)) % 2 == 1;
            let base = if s == 1 { SignFactor::D } else { SignFactor::NegD };
            let sign = if beta_neg { base.negate() } else { base };
            if matches!(rule, RuleId::R53 | RuleId::R63) {
                let last = f.last_mut().unwrap();
                *last = add(*last, 1)?;
                (f, sign, UnimodularMatrix::t_pow(-1))
            } else {
                (f, sign, identity)
            }
        }
    };
    Ok(RuleApplication { word: GaussWord::from_canonical(canon(word_exps)?), sign, symmetry })
}

/// How to pick the next redex among those available.
pub enum Strategy<'a> {
    /// Leftmost middle redex, end rules last.
    Leftmost,
    /// Uniformly among middle redexes, end rules only when none remain.
    Random(&'a mut dyn RngCore),
}

/// One recorded rewrite, passed to observers.
pub struct StepView<'a> {
    pub before: &'a GaussWord,
    pub redex: Redex,
    pub application: &'a RuleApplication,
}

/// `eval(original) = eval(word) · symmetry · sign`.
///
/// The symmetry is the identity unless one of the rules `(53)`, `(63)` or an end rule
/// fired; `symmetry · sign` always maps the class's reduced basis to itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub word: GaussWord,
    pub sign: SignFactor,
    pub symmetry: UnimodularMatrix,
    pub log: Vec<Redex>,
}

impl NormalForm {
    /// `symmetry · sign`.
    pub fn factor(&self) -> UnimodularMatrix {
        &self.symmetry * &self.sign.matrix()
    }
}

pub fn normalize(w: &GaussWord, c: ReducedClass) -> Result<NormalForm> {
    normalize_with(w, c, Strategy::Leftmost, &mut |_| {})
}

pub fn normalize_with(
    w: &GaussWord,
    c: ReducedClass,
    mut strategy: Strategy<'_>,
    observer: &mut dyn FnMut(&StepView<'_>),
) -> Result<NormalForm> {
    let mut cur = w.clone();
    let mut sign = SignFactor::I;
    let mut symmetry = UnimodularMatrix::identity();
    let mut log = Vec::new();
    let mut buf = Vec::new();
    loop {
        let redex = match &mut strategy {
            Strategy::Leftmost => find_redex(&cur, c),
            Strategy::Random(rng) => {
                buf.clear();
                mid_redexes(cur.exponents(), c, &mut buf);
                if buf.is_empty() {
                    end_redexes(cur.exponents(), c, &mut buf);
                }
                buf.choose(&mut **rng).copied()
            }
        };
        let Some(redex) = redex else {
            return Ok(NormalForm { word: cur, sign, symmetry, log });
        };
        if log.len() >= MAX_REWRITE_STEPS {
            return Err(Error::StepLimit(MAX_REWRITE_STEPS));
        }
        let app = apply_rule(&cur, redex.position, redex.rule)?;
        observer(&StepView { before: &cur, redex, application: &app });
        // F_total ← X_s E_s X E = X_s (E_s X E_s) · E_s E
        symmetry = &app.symmetry * &app.sign.conjugate(&symmetry);
        sign = app.sign * sign;
        log.push(redex);
        cur = app.word;
    }
}

/// Pair `(k, d)` ordered lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TerminationMeasure {
    pub k: usize,
    pub d: u64,
}

/// `d = Σ i` over interior indices `i` with `|x_i| = 1`, or with `|x_i| = 2`
/// and `x_i x_{i-1} < 0`.
pub fn measure(w: &GaussWord) -> TerminationMeasure {
    let k = w.k();
    let mut d = 0u64;
    for i in 2..=k {
        let (xi, prev) = (w.x(i), w.x(i - 1));
        if xi.abs() == 1 || (xi.abs() == 2 && xi.signum() * prev.signum() < 0) {
            d += i as u64;
        }
    }
    TerminationMeasure { k, d }
}
