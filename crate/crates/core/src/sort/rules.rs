//! Rewrite systems whose normal forms are the traces of each sort.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::{Algorithm, SortWord};
use crate::error::{Error, Result};
use crate::rewrite::{Strategy, MAX_REWRITE_STEPS};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SortRule {
    Perm1,
    Perm2,
    Perm3,
    Perm4,
    /// `perm4` with `i = j`, immediately followed by the `perm1` it creates.
    Perm4Cancel,
    Ins1,
    Ins2,
    Ins3,
    Ins4,
    Sel1,
    Sel2,
    Sel3,
    Sel4,
}

impl SortRule {
    pub fn name(self) -> &'static str {
        match self {
            SortRule::Perm1 => "perm1",
            SortRule::Perm2 => "perm2",
            SortRule::Perm3 => "perm3",
            SortRule::Perm4 => "perm4",
            SortRule::Perm4Cancel => "perm4+perm1",
            SortRule::Ins1 => "permins1",
            SortRule::Ins2 => "permins2",
            SortRule::Ins3 => "permins3",
            SortRule::Ins4 => "permins4",
            SortRule::Sel1 => "permsel1",
            SortRule::Sel2 => "permsel2",
            SortRule::Sel3 => "permsel3",
            SortRule::Sel4 => "permsel4",
        }
    }
}

impl fmt::Display for SortRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SortRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use SortRule::*;
        [Perm1, Perm2, Perm3, Perm4, Perm4Cancel, Ins1, Ins2, Ins3, Ins4, Sel1, Sel2, Sel3, Sel4]
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown sort rule {s:?}")))
    }
}

/// A rule occurrence starting at a zero-based letter position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SortRedex {
    pub position: usize,
    pub rule: SortRule,
}

impl fmt::Display for SortRedex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.rule, self.position)
    }
}

/// True when no letter of `om` is within distance 1 of `i`.
fn far(i: usize, om: &[usize]) -> bool {
    om.iter().all(|&j| i.abs_diff(j) > 1)
}

fn splice(w: &[usize], a: usize, mid: &[usize], tail_from: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[..a]);
    out.extend_from_slice(mid);
    out.extend_from_slice(&w[tail_from..]);
    out
}

type Found = (SortRedex, Vec<usize>);

fn bubble_at(w: &[usize], a: usize, out: &mut Vec<Found>) {
    let n = w.len();
    let at = |rule| SortRedex { position: a, rule };
    // perm1: t_i t_i → ε
    if a + 1 < n && w[a] == w[a + 1] {
        out.push((at(SortRule::Perm1), splice(w, a, &[], a + 2)));
    }
    // perm2: t_{i+1} ω t_i t_{i+1} → ω t_i t_{i+1} t_i
    let i1 = w[a];
    if i1 >= 2 {
        let i = i1 - 1;
        for b in a + 1..n.saturating_sub(1) {
            let om = &w[a + 1..b];
            if !far(i1, om) {
                break;
            }
            if w[b] == i && w[b + 1] == i1 {
                let mid: Vec<usize> = om.iter().copied().chain([i, i1, i]).collect();
                out.push((at(SortRule::Perm2), splice(w, a, &mid, b + 2)));
            }
        }
    }
    // perm3: ω t_i → t_i ω for a maximal increasing block ω with min(ω) > i + 1
    if a == 0 || w[a - 1] >= w[a] {
        let mut b = a + 1;
        while b < n && w[b] > w[b - 1] {
            b += 1;
        }
        if b < n {
            let om = &w[a..b];
            let i = w[b];
            if om.iter().all(|&x| x > i + 1) {
                let mid: Vec<usize> = std::iter::once(i).chain(om.iter().copied()).collect();
                out.push((at(SortRule::Perm3), splice(w, a, &mid, b + 1)));
            }
        }
    }
    // perm4: t_i t_k ω t_j → t_i t_j t_k ω when t_j commutes with t_k ω
    if a + 1 < n {
        let (i, k) = (w[a], w[a + 1]);
        for b in a + 2..n {
            let j = w[b];
            let kom = &w[a + 1..b];
            if !far(j, kom) {
                continue;
            }
            if i == j {
                out.push((at(SortRule::Perm4Cancel), splice(w, a, kom, b + 1)));
            } else if (i <= j && j <= k) || (k < i && i <= j) {
                let mid: Vec<usize> = [i, j].into_iter().chain(kom.iter().copied()).collect();
                out.push((at(SortRule::Perm4), splice(w, a, &mid, b + 1)));
            }
        }
    }
}

fn insertion_at(w: &[usize], a: usize, out: &mut Vec<Found>) {
    let n = w.len();
    let at = |rule| SortRedex { position: a, rule };
    let i = w[a];
    // permins1: t_i ω t_i → ω
    for b in a + 1..n {
        let om = &w[a + 1..b];
        if !far(i, om) {
            break;
        }
        if w[b] == i {
            out.push((at(SortRule::Ins1), splice(w, a, om, b + 1)));
            break;
        }
    }
    // permins2: t_{i+1} t_i ω t_{i+1} → t_i t_{i+1} t_i ω
    if i >= 2 && a + 1 < n && w[a + 1] == i - 1 {
        for b in a + 2..n {
            let om = &w[a + 2..b];
            if !far(i, om) {
                break;
            }
            if w[b] == i {
                let mid: Vec<usize> = [i - 1, i, i - 1].into_iter().chain(om.iter().copied()).collect();
                out.push((at(SortRule::Ins2), splice(w, a, &mid, b + 1)));
                break;
            }
        }
    }
    // permins3: t_{i+1} ω t_i → ω t_{i+1} t_i, ω non-empty
    for b in a + 1..n {
        let om = &w[a + 1..b];
        if !far(i, om) {
            break;
        }
        if b > a + 1 && i >= 2 && w[b] == i - 1 {
            let mid: Vec<usize> = om.iter().copied().chain([i, i - 1]).collect();
            out.push((at(SortRule::Ins3), splice(w, a, &mid, b + 1)));
            break;
        }
    }
    // permins4: t_{j+1} t_j t_i → t_{j+1} t_i t_j for j − i > 1
    if i >= 2 && a + 2 < n && w[a + 1] == i - 1 && w[a + 2] + 1 < i - 1 {
        out.push((at(SortRule::Ins4), splice(w, a, &[i, w[a + 2], i - 1], a + 3)));
    }
}

fn selection_at(w: &[usize], a: usize, out: &mut Vec<Found>) {
    let n = w.len();
    let at = |rule| SortRedex { position: a, rule };
    let i = w[a];
    // permsel1: t_i ω t_i → ω
    for b in a + 1..n {
        let om = &w[a + 1..b];
        if !far(i, om) {
            break;
        }
        if w[b] == i {
            out.push((at(SortRule::Sel1), splice(w, a, om, b + 1)));
            break;
        }
    }
    // permsel2: t_i ω t_{i+1} t_i → ω t_{i+1} t_i t_{i+1}
    for b in a + 1..n.saturating_sub(1) {
        let om = &w[a + 1..b];
        if !far(i, om) {
            break;
        }
        if w[b] == i + 1 && w[b + 1] == i {
            let mid: Vec<usize> = om.iter().copied().chain([i + 1, i, i + 1]).collect();
            out.push((at(SortRule::Sel2), splice(w, a, &mid, b + 2)));
            break;
        }
    }
    // permsel3: t_{i+1} ω t_i → t_{i+1} t_i ω, ω non-empty
    if i >= 2 {
        for b in a + 1..n {
            let om = &w[a + 1..b];
            if !far(i - 1, om) {
                break;
            }
            if b > a + 1 && w[b] == i - 1 {
                let mid: Vec<usize> = [i, i - 1].into_iter().chain(om.iter().copied()).collect();
                out.push((at(SortRule::Sel3), splice(w, a, &mid, b + 1)));
                break;
            }
        }
    }
    // permsel4: t_i t_j t_{j-1} → t_j t_i t_{j-1} for i − j > 1
    if a + 2 < n && w[a + 1] >= 2 && w[a + 2] == w[a + 1] - 1 && i > w[a + 1] + 1 {
        out.push((at(SortRule::Sel4), splice(w, a, &[w[a + 1], i, w[a + 2]], a + 3)));
    }
}

fn redexes(algo: Algorithm, w: &[usize], first_only: bool) -> Vec<Found> {
    let at = match algo {
        Algorithm::Bubble => bubble_at,
        Algorithm::Insertion => insertion_at,
        Algorithm::Selection => selection_at,
    };
    let mut out = Vec::new();
    for a in 0..w.len() {
        at(w, a, &mut out);
        if first_only && !out.is_empty() {
            out.truncate(1);
            break;
        }
    }
    out
}

/// Leftmost redex with the rewritten word.
pub fn find_sort_redex(algo: Algorithm, w: &SortWord) -> Option<(SortRedex, SortWord)> {
    redexes(algo, w.indices(), true).pop().map(|(r, v)| (r, SortWord::from_vec(v)))
}

/// Every redex with the rewritten word, by position.
pub fn all_sort_redexes(algo: Algorithm, w: &SortWord) -> Vec<(SortRedex, SortWord)> {
    redexes(algo, w.indices(), false).into_iter().map(|(r, v)| (r, SortWord::from_vec(v))).collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SortNormalForm {
    pub word: SortWord,
    pub log: Vec<SortRedex>,
}

/// Rewrites until no redex remains.
///
/// With the leftmost strategy a revisited word is a genuine loop and is
/// reported as [`Error::Cycle`]; random runs stop at the step cap.
pub fn sort_normalize(algo: Algorithm, w: &SortWord, mut strategy: Strategy<'_>) -> Result<SortNormalForm> {
    let mut cur = w.indices().to_vec();
    let mut log = Vec::new();
    let mut seen = HashSet::new();
    loop {
        let found = match &mut strategy {
            Strategy::Leftmost => {
                if !seen.insert(cur.clone()) {
                    return Err(Error::Cycle(log.len()));
                }
                redexes(algo, &cur, true).pop()
            }
            Strategy::Random(rng) => {
                let mut all = redexes(algo, &cur, false);
                if all.is_empty() {
                    None
                } else {
                    let pick = (rng.next_u64() % all.len() as u64) as usize;
                    Some(all.swap_remove(pick))
                }
            }
        };
        let Some((r, next)) = found else {
            return Ok(SortNormalForm { word: SortWord::from_vec(cur), log });
        };
        if log.len() >= MAX_REWRITE_STEPS {
            return Err(Error::StepLimit(MAX_REWRITE_STEPS));
        }
        log.push(r);
        cur = next;
    }
}
