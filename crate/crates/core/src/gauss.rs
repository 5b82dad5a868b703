//! The Gaussian reduction algorithm with a recorded trace.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{nearest_translation, GramMatrix, ReducedClass};
use crate::scalar::Scalar;
use crate::word::GaussWord;

/// Hard ceiling on loop iterations; exact inputs need only logarithmically many.
pub const MAX_ITERATIONS: usize = 1 << 20;

/// One iteration: `b2 ← b2 − x·b1`, then optionally swap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TraceStep {
    pub x: i64,
    pub swapped: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub final_class: ReducedClass,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reduction<F> {
    pub reduced: GramMatrix<F>,
    pub trace: ReductionTrace,
}

/// Translate by the nearest integer; stop once `|b1| <= |b2|`, otherwise swap.
///
/// A terminal translation by zero changes nothing and is not recorded, so an
/// already reduced input yields an empty trace.
pub fn reduce<F: Scalar>(g: &GramMatrix<F>) -> Result<Reduction<F>> {
    let (mut a, mut b, mut c) = (g.g11().clone(), g.g12().clone(), g.g22().clone());
    let mut steps = Vec::new();
    for _ in 0..MAX_ITERATIONS {
        let x = nearest_translation(&(b.clone() / a.clone()))?;
        if x != 0 {
            let xf = F::from_i64_exact(x);
            let xb = xf.clone() * b.clone();
            c = c - xb.clone() - xb + xf.clone() * xf.clone() * a.clone();
            b = b - xf * a.clone();
        }
        if a <= c {
            if x != 0 {
                steps.push(TraceStep { x, swapped: false });
            }
            let reduced = GramMatrix::new_unchecked(a, b, c);
            let final_class = reduced.classify()?;
            return Ok(Reduction { reduced, trace: ReductionTrace { steps, final_class } });
        }
        steps.push(TraceStep { x, swapped: true });
        std::mem::swap(&mut a, &mut c);
    }
    Err(Error::NoTermination(MAX_ITERATIONS))
}

impl ReductionTrace {
    /// Number of swaps `k`.
    pub fn step_count(&self) -> usize {
        self.steps.iter().filter(|s| s.swapped).count()
    }

    /// The word `W` with `W·input = reduced`: `T^{-x_{k+1}} S T^{-x_k} … S T^{-x_1}`.
    pub fn to_word(&self) -> GaussWord {
        let mut e = vec![0i64];
        for s in self.steps.iter().rev() {
            if s.swapped {
                e.push(-s.x);
            } else {
                e[0] = -s.x;
            }
        }
        // walking backwards pushes the body in the order x_k .. x_1
        GaussWord::from_exponents(e).expect("translation exponents fit in i64")
    }

    /// Decomposition of `U` with `input = U·reduced`, the inverse of [`Self::to_word`].
    pub fn gaussian_decomposition(&self) -> GaussWord {
        self.to_word().invert()
    }
}

pub fn trace_to_word(t: &ReductionTrace) -> GaussWord {
    t.to_word()
}

pub fn gaussian_decomposition(t: &ReductionTrace) -> GaussWord {
    t.gaussian_decomposition()
}

pub fn step_count(t: &ReductionTrace) -> usize {
    t.step_count()
}

/// Gram matrices after each translation, before the step's swap.
pub fn replay_states<F: Scalar>(g: &GramMatrix<F>, t: &ReductionTrace) -> Vec<GramMatrix<F>> {
    let (mut a, mut b, mut c) = (g.g11().clone(), g.g12().clone(), g.g22().clone());
    let mut out = Vec::with_capacity(t.steps.len());
    for s in &t.steps {
        let xf = F::from_i64_exact(s.x);
        let xb = xf.clone() * b.clone();
        c = c - xb.clone() - xb + xf.clone() * xf.clone() * a.clone();
        b = b - xf * a.clone();
        out.push(GramMatrix::new_unchecked(a.clone(), b.clone(), c.clone()));
        if s.swapped {
            std::mem::swap(&mut a, &mut c);
        }
    }
    out
}

/// Folds the trace's elementary transforms over `g`.
pub fn replay<F: Scalar>(g: &GramMatrix<F>, t: &ReductionTrace) -> GramMatrix<F> {
    let mut cur = g.clone();
    for s in &t.steps {
        let (a, b, c) = (cur.g11().clone(), cur.g12().clone(), cur.g22().clone());
        let xf = F::from_i64_exact(s.x);
        let xb = xf.clone() * b.clone();
        let c2 = c - xb.clone() - xb + xf.clone() * xf.clone() * a.clone();
        let b2 = b - xf * a.clone();
        cur = if s.swapped {
            GramMatrix::new_unchecked(c2, b2, a)
        } else {
            GramMatrix::new_unchecked(a, b2, c2)
        };
    }
    cur
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, if self.swapped { "swap" } else { "stop" })
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
