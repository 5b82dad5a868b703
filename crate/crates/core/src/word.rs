//! Canonical words `T^{x_{k+1}} S T^{x_k} … S T^{x_1}` over `{S, T, T⁻¹}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::UnimodularMatrix;

/// One letter of the surface syntax; `T(x)` stands for `T^x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    S,
    T(i64),
}

/// A word in canonical form, stored as exponents.
///
/// `exps[0]` is the prefix `x_{k+1}` and `exps[1..]` is the body
/// `(x_k, …, x_1)`, one entry per `S T^{x_i}` factor read left to right.
/// Interior exponents `x_2 … x_k` are never zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GaussWord {
    exps: Vec<i64>,
}

impl GaussWord {
    pub fn identity() -> Self {
        Self { exps: vec![0] }
    }

    /// Builds and canonicalizes `T^prefix · Π S T^{body[j]}`.
    pub fn new(prefix: i64, body: &[i64]) -> Result<Self> {
        let mut e = Vec::with_capacity(body.len() + 1);
        e.push(prefix);
        e.extend_from_slice(body);
        Self::from_exponents(e)
    }

    /// Canonicalizes a raw exponent list `[x_{k+1}, x_k, …, x_1]`.
    pub fn from_exponents(e: Vec<i64>) -> Result<Self> {
        Ok(Self { exps: canon(e)? })
    }

    pub(crate) fn from_canonical(exps: Vec<i64>) -> Self {
        debug_assert!(!exps.is_empty());
        debug_assert!(exps.len() < 3 || exps[1..exps.len() - 1].iter().all(|&x| x != 0));
        Self { exps }
    }

    pub fn prefix(&self) -> i64 {
        self.exps[0]
    }

    /// `(x_k, …, x_1)`.
    pub fn body(&self) -> &[i64] {
        &self.exps[1..]
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    /// Number of `S` letters.
    pub fn k(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.exps == [0]
    }

    /// `x_i` in the one-based numbering `x_1` (rightmost) to `x_{k+1}` (prefix).
    pub fn x(&self, i: usize) -> i64 {
        assert!(i >= 1 && i <= self.k() + 1, "index x_{i} out of range");
        self.exps[self.exps.len() - i]
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        if self.exps[0] != 0 {
            out.push(Letter::T(self.exps[0]));
        }
        for &x in self.body() {
            out.push(Letter::S);
            if x != 0 {
                out.push(Letter::T(x));
            }
        }
        out
    }

    /// Left-to-right product of the letter matrices.
    pub fn eval(&self) -> UnimodularMatrix {
        let mut m = UnimodularMatrix::t_pow(self.exps[0]);
        for &x in self.body() {
            m.mul_s_in_place();
            m.mul_t_in_place(x);
        }
        m
    }

    /// Group inverse: reversed body, all exponents negated.
    pub fn invert(&self) -> Self {
        let exps = self.exps.iter().rev().map(|&x| -x).collect();
        Self::from_canonical(exps)
    }

    /// Every exponent negated.
    pub fn negate(&self) -> Self {
        Self::from_canonical(self.exps.iter().map(|&x| -x).collect())
    }
}

impl Default for GaussWord {
    fn default() -> Self {
        Self::identity()
    }
}

/// Applies `S² → 1` and `T^x T^y → T^{x+y}` until neither fits.
pub(crate) fn canon(e: Vec<i64>) -> Result<Vec<i64>> {
    let mut st: Vec<i64> = Vec::with_capacity(e.len().max(1));
    let mut it = e.into_iter();
    st.push(it.next().unwrap_or(0));
    for v in it {
        // a zero on top of the stack that is not the prefix is an interior S T^0 S
        if st.len() >= 2 && *st.last().unwrap() == 0 {
            st.pop();
            let top = st.last_mut().unwrap();
            *top = top.checked_add(v).ok_or(Error::ExponentOverflow)?;
        } else {
            st.push(v);
        }
    }
    Ok(st)
}

/// Calls `f` on every canonical word with exactly `k` `S` letters whose
/// exponents lie in `[-bound, bound]`, interior ones nonzero.
pub fn for_each_word(k: usize, bound: i64, mut f: impl FnMut(&GaussWord)) {
    let edge: Vec<i64> = (-bound..=bound).collect();
    let inner: Vec<i64> = edge.iter().copied().filter(|&x| x != 0).collect();
    // digit j ranges over `edge` for the prefix and x_1, `inner` otherwise
    let n = k + 1;
    let choices = |j: usize| if j == 0 || j == n - 1 { &edge } else { &inner };
    if (0..n).any(|j| choices(j).is_empty()) {
        return;
    }
    let mut idx = vec![0usize; n];
    let mut w = GaussWord { exps: (0..n).map(|j| choices(j)[0]).collect() };
    loop {
        f(&w);
        let mut j = n;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < choices(j).len() {
                w.exps[j] = choices(j)[idx[j]];
                break;
            }
            idx[j] = 0;
            w.exps[j] = choices(j)[0];
        }
    }
}

pub fn canonicalize(letters: &[Letter]) -> Result<GaussWord> {
    let mut e = vec![0i64];
    for l in letters {
        match *l {
            Letter::S => e.push(0),
            Letter::T(x) => {
                let last = e.last_mut().unwrap();
                *last = last.checked_add(x).ok_or(Error::ExponentOverflow)?;
            }
        }
    }
    GaussWord::from_exponents(e)
}

pub fn eval(w: &GaussWord) -> UnimodularMatrix {
    w.eval()
}

pub fn invert(w: &GaussWord) -> GaussWord {
    w.invert()
}

pub fn negate_word(w: &GaussWord) -> GaussWord {
    w.negate()
}

/// Tokens `S`, `T` or `T^<signed decimal>`, separated by whitespace.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.split_whitespace()
        .map(|tok| match tok {
            "S" => Ok(Letter::S),
            "T" => Ok(Letter::T(1)),
            _ => tok
                .strip_prefix("T^")
                .and_then(|n| n.parse::<i64>().ok())
                .map(Letter::T)
                .ok_or_else(|| Error::Parse(format!("bad word token {tok:?}"))),
        })
        .collect()
}

impl FromStr for GaussWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        canonicalize(&parse_letters(s)?)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S => f.write_str("S"),
            Letter::T(1) => f.write_str("T"),
            Letter::T(x) => write!(f, "T^{x}"),
        }
    }
}

impl fmt::Display for GaussWord {
    /// The identity prints as the empty string, which parses back to itself.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in self.letters() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
