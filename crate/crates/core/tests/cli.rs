use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lattice-rewrite"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn field(o: &Output, key: &str) -> String {
    let text = String::from_utf8_lossy(&o.stdout);
    let prefix = format!("{key}:");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .trim()
        .to_string()
}

#[test]
fn reduce_from_argument_and_stdin() {
    let a = bin(&["reduce", "8 2 1"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(field(&a, "word"), "T^-2 S");
    assert_eq!(field(&a, "gram"), "1 0 4");
    let b = bin(&["reduce"], Some("8 2 1\n"));
    assert_eq!(a.stdout, b.stdout);
    let basis = bin(&["reduce", "1 0 ; 0 2"], None);
    assert_eq!(field(&basis, "class"), "StrictGeneric");
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["reduce", "1 0 0"], None).status.code(), Some(1));
    assert_eq!(bin(&["reduce", "1 0 ; 2 0"], None).status.code(), Some(1));
    assert_eq!(bin(&["reduce", "a b c"], None).status.code(), Some(2));
    assert_eq!(bin(&["rewrite", "T^^2"], None).status.code(), Some(2));
    assert_eq!(bin(&["worst", "--k", "0"], None).status.code(), Some(1));
    assert_eq!(bin(&["sort", "--algo", "bubble", "3 3 1"], None).status.code(), Some(2));
    assert_eq!(bin(&["sort", "t1 t1"], None).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(bin(&["--help"], None).status.code(), Some(0));
}

#[test]
fn printed_words_round_trip() {
    let r = bin(&["rewrite", "S T^2 S T^-3", "--class", "strict-generic"], None);
    let w = field(&r, "word");
    assert_eq!(w, "T S T^-2 S T^-2");
    let again = bin(&["rewrite", &w, "--class", "strict-generic"], None);
    assert_eq!(field(&again, "word"), w);
    assert_eq!(field(&again, "steps"), "0");
    let red = bin(&["reduce", "17 -8 4"], None);
    let d = field(&red, "decomposition");
    let norm = bin(&["rewrite", &d], None);
    assert_eq!(field(&norm, "word"), d);
    let t = bin(&["sort", "--algo", "selection", "4 3 1 2"], None);
    let tw = field(&t, "word");
    let n = bin(&["sort", "--algo", "selection", "--mode", "normalize", &tw], None);
    assert_eq!(field(&n, "word"), tw);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["worst", "--k", "6", "--class", "equal-half"],
        vec!["rewrite", "S T^3 S T^-1 S T^2", "--class", "strict-half", "--mode", "random", "--seed", "5"],
        vec!["sort", "--mode", "normalize", "t3 t2 t3 t1 t2 t1"],
        vec!["bound", "1000000", "--class", "equal-generic"],
    ] {
        let a = bin(&args, None);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, bin(&args, None).stdout);
    }
}

#[test]
fn worst_table_and_rows() {
    let o = bin(&["worst", "--k", "4"], None);
    let text = String::from_utf8_lossy(&o.stdout);
    let rows: Vec<&str> = text.lines().filter_map(|l| l.strip_prefix("row: ")).collect();
    assert_eq!(rows, ["1 5 -", "2 21 4.200000000", "3 121 5.761904762", "4 705 5.826446281"]);
    assert_eq!(field(&o, "ell"), "705");
}

#[test]
fn json_wraps_the_same_keys() {
    let o = bin(&["--json", "sort", "--algo", "bubble", "3 2 1"], None);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["word"], "t1 t2 t1");
    assert_eq!(v["length"], "3");
}
