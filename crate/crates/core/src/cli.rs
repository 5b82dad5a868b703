//! Command-line front end.
//!
//! Every command produces `key: value` lines; `--json` emits the same keys as
//! one object, with repeated keys collected into arrays.

use std::io::Read;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::gauss::reduce;
use crate::lattice::{parse_gram_or_basis, ReducedClass};
use crate::rewrite::{normalize_with, Strategy};
use crate::scalar::parse_rational;
use crate::sort::{self, sort_measure, sort_normalize, Algorithm, Permutation, SortWord};
use crate::word::GaussWord;
use crate::worst_case::{fit_a, max_steps_bound, worst_case_reports};

#[derive(Parser, Debug)]
#[command(name = "lattice-rewrite", version, about = "Gaussian reduction and sorting as rewrite systems")]
struct Cli {
    /// Emit one JSON object instead of keyed lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a Gram matrix "g11 g12 g22" or a basis "x1 y1 ; x2 y2".
    Reduce { input: Option<String> },
    /// Normalize a word such as "S T^2 S T^-3" in one class's rewrite system.
    Rewrite {
        input: Option<String>,
        #[arg(long, default_value = "strict-generic", value_parser = parse_class)]
        class: ReducedClass,
        #[arg(long, value_enum, default_value_t = RewriteMode::Leftmost)]
        mode: RewriteMode,
        /// Seed for `--mode random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extremal inputs for k = 1..K on the class's reference Gram matrix.
    Worst {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value = "strict-generic", value_parser = parse_class)]
        class: ReducedClass,
    },
    /// Upper bound on the step count for inputs of length at most M.
    Bound {
        input: Option<String>,
        /// Growth constant; fitted on k in [5, 20] for the class when omitted.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long, default_value = "strict-generic", value_parser = parse_class)]
        class: ReducedClass,
    },
    /// Trace a sort on a permutation, or normalize a transposition word.
    Sort {
        input: Option<String>,
        #[arg(long, default_value = "bubble", value_parser = parse_algo)]
        algo: Algorithm,
        #[arg(long, value_enum, default_value_t = SortMode::Trace)]
        mode: SortMode,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RewriteMode {
    Leftmost,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SortMode {
    Trace,
    Normalize,
}

fn parse_class(s: &str) -> std::result::Result<ReducedClass, String> {
    ReducedClass::from_str(s).map_err(|e| e.to_string())
}

fn parse_algo(s: &str) -> std::result::Result<Algorithm, String> {
    Algorithm::from_str(s).map_err(|e| e.to_string())
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// 2 for parse failures, 1 for every other error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        _ => 1,
    }
}

#[derive(Default)]
struct Output {
    /// Text-only lines printed before the keyed ones.
    table: Vec<String>,
    fields: Vec<(&'static str, String)>,
}

impl Output {
    fn put(&mut self, key: &'static str, value: impl ToString) {
        self.fields.push((key, value.to_string()));
    }

    fn render(&self, json: bool) -> String {
        if json {
            let mut m = Map::new();
            for (k, v) in &self.fields {
                match m.get_mut(*k) {
                    None => {
                        m.insert((*k).to_string(), Value::String(v.clone()));
                    }
                    Some(Value::Array(a)) => a.push(Value::String(v.clone())),
                    Some(old) => *old = Value::Array(vec![old.take(), Value::String(v.clone())]),
                }
            }
            return format!("{}\n", Value::Object(m));
        }
        let mut s = String::new();
        for line in &self.table {
            s.push_str(line);
            s.push('\n');
        }
        for (k, v) in &self.fields {
            s.push_str(k);
            s.push(':');
            if !v.is_empty() {
                s.push(' ');
                s.push_str(v);
            }
            s.push('\n');
        }
        s
    }
}

fn input_text(arg: Option<String>, stdin: &mut dyn Read) -> Result<String> {
    match arg {
        Some(s) => Ok(s),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            Ok(s.trim().to_string())
        }
    }
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_reduce(input: String) -> Result<Output> {
    let g = parse_gram_or_basis(&input)?;
    let r = reduce(&g)?;
    let mut o = Output::default();
    o.put("gram", &r.reduced);
    o.put("class", r.trace.final_class);
    o.put("steps", r.trace.step_count());
    o.put("trace", &r.trace);
    o.put("word", r.trace.to_word());
    o.put("decomposition", r.trace.gaussian_decomposition());
    Ok(o)
}

fn cmd_rewrite(input: String, class: ReducedClass, mode: RewriteMode, seed: u64) -> Result<Output> {
    let w: GaussWord = input.parse()?;
    let mut rng = StdRng::seed_from_u64(seed);
    let strategy = match mode {
        RewriteMode::Leftmost => Strategy::Leftmost,
        RewriteMode::Random => Strategy::Random(&mut rng),
    };
    let nf = normalize_with(&w, class, strategy, &mut |_| {})?;
    let mut o = Output::default();
    o.put("class", class);
    o.put("word", &nf.word);
    o.put("k", nf.word.k());
    o.put("sign", nf.sign);
    o.put("symmetry", &nf.symmetry);
    o.put("factor", nf.factor());
    o.put("steps", nf.log.len());
    o.put("log", joined(&nf.log));
    Ok(o)
}

fn cmd_worst(k: i64, class: ReducedClass) -> Result<Output> {
    let rows = worst_case_reports(k, class)?;
    let mut o = Output::default();
    let ratio = |r: Option<f64>| r.map_or_else(|| "-".to_string(), |x| format!("{x:.9}"));
    let word_w = rows.iter().map(|r| r.word.to_string().len()).max().unwrap_or(0).max(4);
    let ell_w = rows.iter().map(|r| r.ell_value.to_string().len()).max().unwrap_or(0).max(3);
    o.table.push(format!("{:>3}  {:<word_w$}  {:>ell_w$}  {:>11}", "k", "word", "ell", "ratio"));
    for r in &rows {
        o.table.push(format!(
            "{:>3}  {:<word_w$}  {:>ell_w$}  {:>11}",
            r.k,
            r.word.to_string(),
            r.ell_value.to_string(),
            ratio(r.ratio)
        ));
        o.put("row", format!("{} {} {}", r.k, r.ell_value, ratio(r.ratio)));
    }
    let last = rows.last().expect("k >= 1 yields a row");
    o.put("class", class);
    o.put("k", last.k);
    o.put("word", &last.word);
    o.put("matrix", &last.matrix);
    o.put("ell", &last.ell_value);
    o.put("length_sq", &last.length_sq);
    Ok(o)
}

fn cmd_bound(input: String, a: Option<f64>, class: ReducedClass) -> Result<Output> {
    let m: BigRational =
        parse_rational(&input).ok_or_else(|| Error::Parse(format!("bad rational {input:?}")))?;
    let a = match a {
        Some(a) => a,
        None => fit_a(5..=20, class)?.a,
    };
    let mut o = Output::default();
    o.put("m", &m);
    o.put("a", a);
    o.put("bound", max_steps_bound(&m, a)?);
    Ok(o)
}

fn cmd_sort(input: String, algo: Algorithm, mode: SortMode) -> Result<Output> {
    let mut o = Output::default();
    o.put("algo", algo);
    match mode {
        SortMode::Trace => {
            let p: Permutation = input.parse()?;
            let t = sort::trace(algo, &p);
            o.put("length", t.len());
            o.put("word", t);
        }
        SortMode::Normalize => {
            let w: SortWord = input.parse()?;
            let nf = sort_normalize(algo, &w, Strategy::Leftmost)?;
            // replay to report the measure before each step and at the end
            let mut cur = w.clone();
            let mut measures = vec![sort_measure(&cur)];
            for _ in &nf.log {
                let (_, next) = sort::find_sort_redex(algo, &cur).expect("logged redex exists");
                cur = next;
                measures.push(sort_measure(&cur));
            }
            o.put("word", &nf.word);
            o.put("steps", nf.log.len());
            o.put("log", joined(&nf.log));
            o.put("measures", joined(measures.iter().map(|m| format!("({},{},{})", m.l, m.h, m.s))));
        }
    }
    Ok(o)
}

/// Parses `args` (program name first) and runs one command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                CommandResult { exit_code: 0, stdout: text, stderr: String::new() }
            } else {
                CommandResult { exit_code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let json = cli.json;
    let out = match cli.command {
        Command::Reduce { input } => input_text(input, stdin).and_then(cmd_reduce),
        Command::Rewrite { input, class, mode, seed } => {
            input_text(input, stdin).and_then(|s| cmd_rewrite(s, class, mode, seed))
        }
        Command::Worst { k, class } => cmd_worst(k, class),
        Command::Bound { input, a, class } => input_text(input, stdin).and_then(|s| cmd_bound(s, a, class)),
        Command::Sort { input, algo, mode } => input_text(input, stdin).and_then(|s| cmd_sort(s, algo, mode)),
    };
    match out {
        Ok(o) => CommandResult { exit_code: 0, stdout: o.render(json), stderr: String::new() },
        Err(e) => CommandResult { exit_code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
