//! Sorting executions as words over adjacent transpositions `t_i`.
//!
//! `t_i` swaps positions `i` and `i + 1` (one-based) and the leftmost letter
//! acts first, so a trace read left to right replays the algorithm.

mod rules;
mod trace;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

pub use rules::{all_sort_redexes, find_sort_redex, sort_normalize, SortNormalForm, SortRedex, SortRule};
pub use trace::{bubble_passes, trace};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Algorithm {
    Bubble,
    Insertion,
    Selection,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Bubble, Algorithm::Insertion, Algorithm::Selection];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Bubble => "bubble",
            Algorithm::Insertion => "insertion",
            Algorithm::Selection => "selection",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bubble" => Ok(Algorithm::Bubble),
            "insertion" => Ok(Algorithm::Insertion),
            "selection" => Ok(Algorithm::Selection),
            _ => Err(Error::Parse(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// Images `1..=n` of the sorted list, in list order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parse(format!("{images:?} is not a permutation of 1..{n}")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    pub fn reversed(n: usize) -> Self {
        Self { images: (1..=n).rev().collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn inversions(&self) -> usize {
        let v = &self.images;
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
    }

    /// Every permutation of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad image {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A word `t_{i_1} … t_{i_k}` with every `i_j >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct SortWord {
    indices: Vec<usize>,
}

impl SortWord {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::Parse("transposition indices start at 1".into()));
        }
        Ok(Self { indices })
    }

    pub(crate) fn from_vec(indices: Vec<usize>) -> Self {
        debug_assert!(!indices.contains(&0));
        Self { indices }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn max_letter(&self) -> usize {
        self.indices.iter().copied().max().unwrap_or(0)
    }

    /// The permutation `p` of `1..=n` that this word sorts.
    pub fn permutation(&self, n: usize) -> Result<Permutation> {
        let rev = SortWord::from_vec(self.indices.iter().rev().copied().collect());
        Ok(Permutation { images: apply_word(&rev, &(1..=n).collect::<Vec<_>>())? })
    }
}

impl FromStr for SortWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let indices = s
            .split_whitespace()
            .map(|t| {
                t.strip_prefix('t')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad transposition {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SortWord { indices })
    }
}

impl fmt::Display for SortWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| format!("t{i}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Applies the swaps left to right.
pub fn apply_word<T: Clone>(w: &SortWord, list: &[T]) -> Result<Vec<T>> {
    let mut out = list.to_vec();
    for &i in &w.indices {
        if i >= out.len() {
            return Err(Error::IndexOutOfRange { index: i, len: out.len() });
        }
        out.swap(i - 1, i);
    }
    Ok(out)
}

/// Maximal increasing blocks `[ω_1, …, ω_m]` of a word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncDecomposition {
    pub blocks: Vec<SortWord>,
}

impl IncDecomposition {
    pub fn s(&self) -> usize {
        self.blocks.len()
    }

    /// Each block cut into consecutively increasing runs `t_i t_{i+1} … t_{i+p}`.
    pub fn consecutive(&self) -> Vec<Vec<SortWord>> {
        self.blocks
            .iter()
            .map(|b| {
                split_runs(b.indices(), |x, y| y == x + 1)
                    .into_iter()
                    .map(SortWord::from_vec)
                    .collect()
            })
            .collect()
    }
}

fn split_runs(v: &[usize], keep: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &x in v {
        match out.last_mut() {
            Some(run) if keep(*run.last().unwrap(), x) => run.push(x),
            _ => out.push(vec![x]),
        }
    }
    out
}

pub fn inc_decomposition(w: &SortWord) -> IncDecomposition {
    let blocks = split_runs(w.indices(), |x, y| y > x).into_iter().map(SortWord::from_vec).collect();
    IncDecomposition { blocks }
}

/// `l = Σ i_j`, `h = Σ_{i=1..s} (s − i)(max(ω) − |ω_i|)`, `s` the block count.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SortMeasure {
    pub l: u64,
    pub h: u64,
    pub s: usize,
}

pub fn sort_measure(w: &SortWord) -> SortMeasure {
    let dec = inc_decomposition(w);
    let s = dec.s();
    let max = w.max_letter();
    let h = dec
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| ((s - 1 - i) * (max - b.len())) as u64)
        .sum();
    SortMeasure { l: w.indices.iter().map(|&i| i as u64).sum(), h, s }
}

/// `min |i − j|` over letters of `a` and `b`; `None` when either is empty.
pub fn dist(a: &[usize], b: &[usize]) -> Option<usize> {
    a.iter().flat_map(|&i| b.iter().map(move |&j| i.abs_diff(j))).min()
}

/// Block maxima strictly decrease and neighbouring blocks are at distance at most 1.
pub fn block_structure_holds(w: &SortWord) -> bool {
    let dec = inc_decomposition(w);
    dec.blocks.windows(2).all(|p| {
        p[0].max_letter() > p[1].max_letter()
            && dist(p[0].indices(), p[1].indices()).is_some_and(|d| d <= 1)
    })
}

/// Whenever `t_i` is in block `p + 1`, `t_{i+1}` is in block `p`.
pub fn letter_condition_holds(w: &SortWord) -> bool {
    let dec = inc_decomposition(w);
    dec.blocks
        .windows(2)
        .all(|p| p[1].indices().iter().all(|&i| p[0].indices().contains(&(i + 1))))
}

/// A word equal to `p` in the symmetric group, of the requested length.
///
/// Starts from the bubble trace, inserts cancelling pairs `t_i t_i`, then
/// scrambles with random commutation and braid moves.
pub fn random_decomposition<R: Rng + ?Sized>(p: &Permutation, target_len: usize, rng: &mut R) -> Result<SortWord> {
    let base = trace(Algorithm::Bubble, p);
    let min = base.len();
    if target_len < min || (target_len - min) % 2 == 1 {
        return Err(Error::Parity { target: target_len, min });
    }
    let mut w = base.indices;
    if target_len > min && p.len() < 2 {
        return Err(Error::Parity { target: target_len, min });
    }
    for _ in 0..(target_len - min) / 2 {
        let pos = rng.gen_range(0..=w.len());
        let i = rng.gen_range(1..p.len());
        w.splice(pos..pos, [i, i]);
    }
    for _ in 0..3 * w.len() {
        if w.len() < 2 {
            break;
        }
        let a = rng.gen_range(0..w.len() - 1);
        if w[a].abs_diff(w[a + 1]) > 1 {
            w.swap(a, a + 1);
        } else if a + 2 < w.len() && w[a] == w[a + 2] && w[a].abs_diff(w[a + 1]) == 1 {
            let (x, y) = (w[a], w[a + 1]);
            w[a] = y;
            w[a + 1] = x;
            w[a + 2] = y;
        }
    }
    Ok(SortWord::from_vec(w))
}
