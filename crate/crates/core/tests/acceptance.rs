//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lattice_rewrite::gauss::gaussian_decomposition;
use lattice_rewrite::rewrite::{normalize_with, NormalForm, RuleId, Strategy, StepView};
use lattice_rewrite::sort::{
    block_structure_holds, bubble_passes, find_sort_redex, inc_decomposition, letter_condition_holds, trace,
};
use lattice_rewrite::word::for_each_word;
use lattice_rewrite::worst_case::{brute_force_min, extremal_input, fit_a, g_of_k, growth_check};
use lattice_rewrite::{
    apply_word, measure, random_decomposition, reduce, sort_normalize, Algorithm, Error,
    GaussWord, Gram, GramMatrix, Permutation, Rational, ReducedClass, SmallRational,
    UnimodularMatrix,
};

type Outcome = (bool, String);

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Tallies for criterion 3.
#[derive(Default)]
struct SignTally {
    checks: usize,
    unsound: usize,
    /// Factors lying in `{±I, ±D}` themselves, per class.
    literal: [usize; 4],
    per_class: [usize; 4],
}

impl SignTally {
    /// `eval(w) = eval(nf) · F` exactly, with `F` an automorphism of `R`.
    fn record(&mut self, c: ReducedClass, w: &GaussWord, nf: &NormalForm, r: &Gram) {
        let f = nf.factor();
        let i = ReducedClass::ALL.iter().position(|&x| x == c).unwrap();
        self.checks += 1;
        self.per_class[i] += 1;
        if r.apply_transform(&f) != *r || w.eval() != &nf.word.eval() * &f {
            self.unsound += 1;
        }
        let small = f.b().is_zero() && f.c().is_zero();
        if small {
            self.literal[i] += 1;
        }
    }
}

fn criterion_1(tally: &mut SignTally) -> Outcome {
    let mut mismatches = 0usize;
    let mut total = 0usize;
    let mut first = None;
    for c in ReducedClass::ALL {
        let r: Gram = c.reference_gram();
        for k in 0..=5 {
            for_each_word(k, 4, |w| {
                total += 1;
                let g = r.apply_transform(&w.eval());
                let oracle = gaussian_decomposition(&reduce(&g).expect("valid input").trace);
                let nf = normalize_with(w, c, Strategy::Leftmost, &mut |_| {}).expect("terminates");
                if nf.word != oracle {
                    mismatches += 1;
                    first.get_or_insert_with(|| format!("{c} {w}: {} vs {oracle}", nf.word));
                }
                tally.record(c, w, &nf, &r);
            });
        }
    }
    let detail = first.map_or_else(String::new, |f| format!(", first {f}"));
    (mismatches == 0, format!("{mismatches} mismatches over {total} (word, class) pairs{detail}"))
}

fn random_word(rng: &mut StdRng) -> GaussWord {
    let k = rng.gen_range(0..=12usize);
    let e: Vec<i64> = (0..=k).map(|_| rng.gen_range(-9..=9)).collect();
    GaussWord::from_exponents(e).expect("small exponents")
}

fn is_measured(rule: RuleId) -> bool {
    matches!(rule, RuleId::R3 | RuleId::R4 | RuleId::R5 | RuleId::R6 | RuleId::R53 | RuleId::R63)
}

fn criterion_2(tally: &mut SignTally) -> Outcome {
    let mut rng = StdRng::seed_from_u64(20);
    let mut order_mismatch = 0usize;
    let mut measure_violations = 0usize;
    let mut errors = 0usize;
    let mut runs = 0usize;
    for c in ReducedClass::ALL {
        let r: Gram = c.reference_gram();
        for _ in 0..1000 {
            let w = random_word(&mut rng);
            let mut check = |s: &StepView| {
                if is_measured(s.redex.rule) && measure(&s.application.word) >= measure(s.before) {
                    measure_violations += 1;
                }
            };
            let base = match normalize_with(&w, c, Strategy::Leftmost, &mut check) {
                Ok(nf) => nf,
                Err(_) => {
                    errors += 1;
                    continue;
                }
            };
            tally.record(c, &w, &base, &r);
            for seed in 0..10u64 {
                let mut order = StdRng::seed_from_u64(seed ^ rng.gen::<u64>());
                runs += 1;
                match normalize_with(&w, c, Strategy::Random(&mut order), &mut check) {
                    Ok(nf) => {
                        tally.record(c, &w, &nf, &r);
                        if nf.word != base.word {
                            order_mismatch += 1;
                        }
                    }
                    Err(_) => errors += 1,
                }
            }
        }
    }
    let ok = order_mismatch == 0 && measure_violations == 0 && errors == 0;
    (
        ok,
        format!(
            "4000 words, {runs} randomized runs: {errors} non-terminating, {order_mismatch} order-dependent results, {measure_violations} measure violations"
        ),
    )
}

fn criterion_3(t: &SignTally) -> Outcome {
    // Aut(R) is {±I, ±D} for the strict generic class, so there the factor must be literal
    let strict_literal = t.literal[0] == t.per_class[0];
    let shares: Vec<String> = ReducedClass::ALL
        .iter()
        .zip(t.literal.iter().zip(&t.per_class))
        .map(|(c, (l, n))| format!("{c} {l}/{n}"))
        .collect();
    (
        t.unsound == 0 && strict_literal,
        format!(
            "{} unsound factors over {} normalizations from criteria 1 and 2; factor in {{±I, ±D}}: {}",
            t.unsound,
            t.checks,
            shares.join(", ")
        ),
    )
}

fn random_proper(rng: &mut StdRng) -> Gram {
    let g11 = Rational::new(rng.gen_range(1..=60i64).into(), rng.gen_range(1..=7i64).into());
    // m uniform on a grid in [-1/2, 1/2)
    let den = rng.gen_range(1..=40i64);
    let m = Rational::new(rng.gen_range(-den..den).into(), (2 * den).into());
    let g12 = &m * &g11;
    let extra = Rational::new(rng.gen_range(1..=90i64).into(), rng.gen_range(1..=9i64).into());
    let g22 = &g12 * &g12 / &g11 + extra;
    let g = GramMatrix::new(g11, g12, g22).expect("positive definite by construction");
    assert!(g.is_proper());
    g
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for c in ReducedClass::ALL {
        let r: Gram = c.reference_gram();
        for k in 1..=4 {
            let (w, v) = brute_force_min(k, c, &r, 4).expect("bound 4 admits words");
            let g = g_of_k(k as i64, c, &r).expect("class matches");
            if v != g {
                bad.push(format!("{c} k={k}: brute {v} at {w}, g {g}"));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(4);
    let mut monotone_fail = 0usize;
    let ell = |b: &Gram, u: &UnimodularMatrix| b.apply_transform(u).ell();
    let st = |x: i64| &UnimodularMatrix::s() * &UnimodularMatrix::t_pow(x);
    for _ in 0..10_000 {
        let b = random_proper(&mut rng);
        let x = rng.gen_range(3..=25i64) * if rng.gen() { 1 } else { -1 };
        let lhs = ell(&b, &st(x));
        if lhs < ell(&b, &st(2)) || lhs < ell(&b, &st(-2)) {
            monotone_fail += 1;
        }
        let y = rng.gen_range(-25..=25i64);
        if ell(&b, &UnimodularMatrix::t_pow(y)) < b.ell() {
            monotone_fail += 1;
        }
    }
    let ok = bad.is_empty() && monotone_fail == 0;
    (
        ok,
        format!(
            "brute-force minima equal g(k) for k<=4 in all classes: {}; monotonicity failures on 10^4 proper grams: {monotone_fail}",
            if bad.is_empty() { "yes".to_string() } else { bad.join("; ") }
        ),
    )
}

fn criterion_5() -> Outcome {
    let silver = 1.0 + 2f64.sqrt();
    let rows = match growth_check(50) {
        Ok(r) => r,
        Err(e) => return (false, e.to_string()),
    };
    let shape = rows.iter().all(|r| r.alpha == &r.beta * 2 + &r.gamma);
    let worst_ratio = rows
        .iter()
        .filter(|r| r.k >= 12)
        .map(|r| (r.ratio.expect("k >= 2") - silver).abs())
        .fold(0.0, f64::max);
    let mut fits = Vec::new();
    let mut fits_ok = true;
    for c in ReducedClass::ALL {
        match fit_a(5..=20, c) {
            Ok(f) => {
                let mags: Vec<f64> = f.residuals.iter().map(|(_, e)| e.abs()).collect();
                let shrinking = mags.windows(2).all(|p| p[1] < p[0]);
                fits_ok &= f.a > 0.0 && shrinking;
                fits.push(format!("{c} A={:.6}{}", f.a, if shrinking { "" } else { " (residuals not shrinking)" }));
            }
            Err(e) => {
                fits_ok = false;
                fits.push(format!("{c}: {e}"));
            }
        }
    }
    let ok = shape && worst_ratio <= 1e-6 && fits_ok;
    (
        ok,
        format!(
            "alpha=2beta+gamma for k<=50: {shape}; max |ratio-(1+sqrt2)| for k>=12: {worst_ratio:.2e}; fits over [5,20]: {}",
            fits.join(", ")
        ),
    )
}

/// `U G Uᵀ` on integer Gram entries.
fn congruence(u: [i128; 4], g: [i128; 3]) -> [i128; 3] {
    let [a, b, c, d] = u;
    let [p, s, t] = g;
    [
        a * a * p + 2 * a * b * s + b * b * t,
        a * c * p + (a * d + b * c) * s + b * d * t,
        c * c * p + 2 * c * d * s + d * d * t,
    ]
}

struct Sweep {
    g: Vec<i128>,
    r: [i128; 3],
    inputs: usize,
    violations: usize,
    first: Option<String>,
}

impl Sweep {
    fn check(&mut self, gram: [i128; 3], word: &[i64]) {
        for p in -3..=3i128 {
            let [g11, g12, g22] = congruence([1, 0, p, 1], gram);
            let ell = g11 + g22;
            let sm = |v: i128| SmallRational::from_integer(v);
            let input = GramMatrix::new(sm(g11), sm(g12), sm(g22)).expect("congruent to R");
            let swaps = reduce(&input).expect("valid input").trace.step_count();
            self.inputs += 1;
            let need = self.g[swaps.min(self.g.len() - 1)];
            if ell < need {
                self.violations += 1;
                self.first.get_or_insert_with(|| format!("prefix {p}, body {word:?}: ell {ell}, {swaps} swaps"));
            }
        }
    }

    /// Extends the word on the left by `S T^x`; `interior` lists admissible `x`.
    fn walk(&mut self, gram: [i128; 3], word: &mut Vec<i64>, depth: usize, interior: &[i64]) {
        self.check(gram, word);
        if depth == 0 {
            return;
        }
        let first = word.is_empty();
        let xs: Vec<i64> = if first { (-3..=3).collect() } else { interior.to_vec() };
        for x in xs {
            let x = x as i128;
            // S T^x = [[x, 1], [1, 0]]
            let next = congruence([x, 1, 1, 0], gram);
            word.insert(0, x as i64);
            self.walk(next, word, depth - 1, interior);
            word.remove(0);
        }
    }
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for c in ReducedClass::ALL {
        let r: Gram = c.reference_gram();
        for k in 1..=15i64 {
            let g = extremal_input(k, c, &r).expect("class matches");
            let swaps = reduce(&g).expect("valid").trace.step_count();
            if swaps != k as usize {
                bad.push(format!("{c} k={k}: {swaps} swaps"));
            }
        }
    }
    let r: Gram = ReducedClass::StrictGeneric.reference_gram();
    let g: Vec<i128> = (0..=10i64)
        .map(|k| if k == 0 { q(0) } else { g_of_k(k, ReducedClass::StrictGeneric, &r).unwrap() })
        .map(|v| v.to_integer().to_i128().unwrap())
        .collect();
    let mut sweep = Sweep { g, r: [1, 0, 4], inputs: 0, violations: 0, first: None };
    let r0 = sweep.r;
    // every canonical word up to 7 factors, then words whose interior avoids ±1
    sweep.walk(r0, &mut Vec::new(), 7, &[-3, -2, -1, 1, 2, 3]);
    let mut word = Vec::new();
    for_depth(&mut sweep, r0, &mut word);
    let ok = bad.is_empty() && sweep.violations == 0;
    let detail = sweep.first.map_or_else(String::new, |f| format!(", first {f}"));
    (
        ok,
        format!(
            "extremal inputs take exactly k swaps for k<=15 in all classes: {}; sweep of {} inputs: {} below g(swaps){detail}",
            if bad.is_empty() { "yes".to_string() } else { bad.join("; ") },
            sweep.inputs,
            sweep.violations
        ),
    )
}

/// Words with 8 to 10 factors and interior exponents in `{±2, ±3}`.
fn for_depth(sweep: &mut Sweep, r: [i128; 3], word: &mut Vec<i64>) {
    fn go(sweep: &mut Sweep, gram: [i128; 3], word: &mut Vec<i64>) {
        if word.len() >= 8 {
            sweep.check(gram, word);
        }
        if word.len() == 10 {
            return;
        }
        let xs: Vec<i64> = if word.is_empty() { (-3..=3).collect() } else { vec![-3, -2, 2, 3] };
        for x in xs {
            let next = congruence([x as i128, 1, 1, 0], gram);
            word.insert(0, x);
            go(sweep, next, word);
            word.remove(0);
        }
    }
    go(sweep, r, word)
}

struct SortStats {
    decompositions: usize,
    trace_redexes: usize,
    mismatches: usize,
    cycles: usize,
    other_errors: usize,
}

fn sort_sweep(algo: Algorithm, reduced: &mut Vec<lattice_rewrite::SortWord>) -> SortStats {
    let mut rng = StdRng::seed_from_u64(7);
    let mut s = SortStats { decompositions: 0, trace_redexes: 0, mismatches: 0, cycles: 0, other_errors: 0 };
    for n in 1..=7 {
        for p in Permutation::all(n) {
            let t = trace(algo, &p);
            if find_sort_redex(algo, &t).is_some() {
                s.trace_redexes += 1;
            }
            for _ in 0..5 {
                let extra = if n >= 2 { rng.gen_range(0..=4) } else { 0 };
                let w = random_decomposition(&p, t.len() + 2 * extra, &mut rng).expect("parity respected");
                assert_eq!(apply_word(&w, p.images()).unwrap(), (1..=n).collect::<Vec<_>>());
                s.decompositions += 1;
                match sort_normalize(algo, &w, Strategy::Leftmost) {
                    Ok(nf) => {
                        if nf.word != t {
                            s.mismatches += 1;
                        }
                        if algo == Algorithm::Bubble {
                            reduced.push(nf.word);
                        }
                    }
                    Err(Error::Cycle(_)) => s.cycles += 1,
                    Err(_) => s.other_errors += 1,
                }
            }
        }
    }
    s
}

fn criterion_7(bubble_words: &mut Vec<lattice_rewrite::SortWord>) -> Outcome {
    let b = sort_sweep(Algorithm::Bubble, bubble_words);
    let ok = b.trace_redexes == 0 && b.mismatches == 0 && b.cycles == 0 && b.other_errors == 0;
    let mut msg = format!(
        "bubble: {} traces with a redex, {} mismatches and {} cycles over {} decompositions",
        b.trace_redexes, b.mismatches, b.cycles, b.decompositions
    );
    for algo in [Algorithm::Insertion, Algorithm::Selection] {
        let s = sort_sweep(algo, &mut Vec::new());
        msg.push_str(&format!(
            "; finding, {algo}: {} traces with a redex, {} mismatches, {} cycles, {} other errors over {}",
            s.trace_redexes, s.mismatches, s.cycles, s.other_errors, s.decompositions
        ));
    }
    (ok, msg)
}

fn criterion_8(bubble_words: &[lattice_rewrite::SortWord]) -> Outcome {
    let blocks = bubble_words.iter().filter(|w| !block_structure_holds(w)).count();
    let letters = bubble_words.iter().filter(|w| !letter_condition_holds(w)).count();
    let mut first_block = 0usize;
    let mut worst_ok = true;
    for n in 1..=7usize {
        let mut best = 0usize;
        for p in Permutation::all(n) {
            let passes = bubble_passes(&p);
            let dec = inc_decomposition(&trace(Algorithm::Bubble, &p));
            if dec.blocks.first() != passes.first() {
                first_block += 1;
            }
            best = best.max(trace(Algorithm::Bubble, &p).len());
        }
        let rev = trace(Algorithm::Bubble, &Permutation::reversed(n)).len();
        worst_ok &= rev == best && rev == n * (n - 1) / 2;
    }
    let ok = blocks == 0 && letters == 0 && first_block == 0 && worst_ok;
    (
        ok,
        format!(
            "{} reduced words: {blocks} break the block conditions, {letters} break the letter condition; first block differs from the first pass for {first_block} permutations; reversed permutation attains n(n-1)/2 maximum for n<=7: {worst_ok}",
            bubble_words.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut report = |n: usize, start: Instant, (ok, msg): Outcome| {
        all_ok &= ok;
        println!(
            "criterion {n}: {} ({:.1}s) {msg}",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    };
    let mut tally = SignTally::default();
    let t = Instant::now();
    let c1 = criterion_1(&mut tally);
    report(1, t, c1);
    let t = Instant::now();
    let c2 = criterion_2(&mut tally);
    report(2, t, c2);
    report(3, Instant::now(), criterion_3(&tally));
    let t = Instant::now();
    report(4, t, criterion_4());
    let t = Instant::now();
    report(5, t, criterion_5());
    let t = Instant::now();
    report(6, t, criterion_6());
    let mut bubble_words = Vec::new();
    let t = Instant::now();
    let c7 = criterion_7(&mut bubble_words);
    report(7, t, c7);
    let t = Instant::now();
    report(8, t, criterion_8(&bubble_words));
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
