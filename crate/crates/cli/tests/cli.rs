use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn gtseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtseq")).args(args).env_remove("GTSEQ_CONFIG").output().unwrap()
}

fn gtseq_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gtseq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn without_wall_time(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("wallTime");
    v
}

#[test]
fn count_examples() {
    let o = gtseq(&["count", "product", "--k", "0,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = gtseq(&["count", "alpha", "--n", "3", "--k", "1,2,3"]);
    assert_eq!(stdout(&o).trim(), "7");
}

#[test]
fn counts_agree_across_routes() {
    // hand-computed: (3+1)/1 * (4+2)/2 * (1+1)/1
    let k = "-1,2,3";
    for cmd in [
        vec!["count", "product", "--k", k],
        vec!["count", "det", "--k", k],
        vec!["count", "gtseq", "--k", k],
        vec!["count", "gtseq", "--k", k, "--seq", "swap:1,3"],
        vec!["count", "gtseq", "--k", k, "--seq", "random:4"],
        vec!["count", "patterns", "--k", k],
        vec!["count", "paths", "--k", k, "--variant", "general"],
    ] {
        let o = gtseq(&cmd);
        assert!(o.status.success(), "{cmd:?}");
        assert_eq!(stdout(&o).trim(), "24", "{cmd:?}");
    }
    for via in ["recursion", "ext1", "ext2", "ext3", "ext4", "three-term", "delta-delta"] {
        let o = gtseq(&["count", "alpha", "--k", "1,2,3,4", "--via", via]);
        assert_eq!(stdout(&o).trim(), "42", "{via}");
    }
}

#[test]
fn large_counts_print_exactly() {
    let o = gtseq(&["count", "product", "--k", "0,1000000,2000000,3000000,4000000"]);
    let s = stdout(&o);
    assert!(s.trim().chars().all(|c| c.is_ascii_digit()), "{s}");
    assert!(s.trim().len() > 20);
}

#[test]
fn verify_example_passes_and_is_deterministic() {
    let args = ["verify", "theorem-main", "--n", "3", "--grid=-2..2", "--trees", "5", "--seed", "7"];
    let a = gtseq(&args);
    assert_eq!(a.status.code(), Some(0));
    let report = without_wall_time(&stdout(&a));
    assert_eq!(report["violations"], Value::Array(vec![]));
    assert_eq!(report["pointsChecked"], 125);
    assert_eq!(report["parameters"]["seed"], 7);
    let b = gtseq(&args);
    assert_eq!(report, without_wall_time(&stdout(&b)));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "no-such-suite"],
        vec!["verify", "formula", "--grid", "3..1"],
        vec!["count", "alpha", "--n", "2", "--k", "1,2,3"],
        vec!["count", "product", "--k", "1,x"],
        vec!["count", "paths", "--k", "-1,0"],
        vec!["count", "gtseq", "--k", "1,2", "--seq", "swap:1,9"],
        vec!["frobnicate"],
    ] {
        assert_eq!(gtseq(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn config_file_is_read_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gtseq.toml");
    std::fs::write(&path, "[verify]\nn = 2\ngrid = \"-1..1\"\ntrees = 2\nseed = 3\nthreads = 2\nmemo_cap = 50\n")
        .unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "theorem-main"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_gtseq")).args(&args).env("GTSEQ_CONFIG", &path).output().unwrap()
    };
    let o = run(&[]);
    assert!(o.status.success());
    let r = without_wall_time(&stdout(&o));
    assert_eq!(r["pointsChecked"], 9);
    assert_eq!(r["parameters"]["grid"], "-1..1");
    assert_eq!(r["parameters"]["seed"], 3);
    let o = run(&["--n", "3", "--seed", "11"]);
    let r = without_wall_time(&stdout(&o));
    assert_eq!(r["pointsChecked"], 27);
    assert_eq!(r["parameters"]["seed"], 11);

    std::fs::write(&path, "[verify]\nunknown = 1\n").unwrap();
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn emit_tree_formats() {
    let o = gtseq(&["emit", "tree", "--n", "4", "--seed", "2", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 3);
    let o = gtseq(&["emit", "tree", "--n", "4", "--seed", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
    assert_eq!(o.stdout, gtseq(&["emit", "tree", "--n", "4", "--seed", "2"]).stdout);
}

#[test]
fn emit_streams_have_the_right_length() {
    // interlacing patterns over (1, 3): top entry in 1..=3
    let o = gtseq(&["emit", "pattern", "--k", "1,3"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    // tableaux of shape (2, 1) with entries at most 3
    let o = gtseq(&["emit", "ssyt", "--shape", "2,1", "--max", "3"]);
    assert_eq!(stdout(&o).lines().count(), 8);
    let o = gtseq(&["emit", "triangles", "--ext", "2", "--k", "1,2,3"]);
    let signs: i64 =
        stdout(&o).lines().map(|l| serde_json::from_str::<Value>(l).unwrap()["sign"].as_i64().unwrap()).sum();
    assert_eq!(signs, 7);
    let o = gtseq(&["emit", "paths", "--k", "0,1", "--limit", "2"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = gtseq(&["emit", "paths", "--k", "0,1", "--format", "svg"]);
    assert!(stdout(&o).starts_with("<svg"));
    let o = gtseq(&["emit", "refined", "--n", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["refined"], serde_json::json!(["2", "3", "2"]));
}

#[test]
fn convert_round_trips() {
    let patterns = stdout(&gtseq(&["emit", "pattern", "--k", "0,2,3"]));
    let classical: String = patterns
        .lines()
        .filter(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            v["sign"] == 1
        })
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(!classical.is_empty());

    let tableaux = gtseq_stdin(&["convert", "--from", "pattern", "--to", "ssyt"], &classical);
    assert!(tableaux.status.success());
    let back = gtseq_stdin(&["convert", "--from", "ssyt", "--to", "pattern", "--n", "3"], &stdout(&tableaux));
    assert_eq!(stdout(&back), classical);

    let seqs = gtseq_stdin(&["convert", "--from", "pattern", "--to", "treeseq"], &patterns);
    let back = gtseq_stdin(&["convert", "--from", "treeseq", "--to", "pattern"], &stdout(&seqs));
    assert_eq!(stdout(&back), patterns);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    std::fs::write(&file, classical.lines().next().unwrap()).unwrap();
    let o = gtseq(&["convert", "--from", "pattern", "--to", "ssyt", "--input", file.to_str().unwrap()]);
    assert!(o.status.success());

    let bad = gtseq_stdin(&["convert", "--from", "pattern", "--to", "ssyt"], "{\"rows\": [[5], [1, 2]], \"sign\": 1}");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn apply_operators() {
    // (E - id) on the product formula in one variable: (k+1) - k
    let o = gtseq(&["apply", "--op", "D k1", "--k", "5"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = gtseq(&["apply", "--op", "D k2", "--k", "0,4"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = gtseq(&["apply", "--op", "D^3 k2", "--to", "gtseq", "--k", "0,1,2"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = gtseq(&["apply", "--op", "id", "--to", "alpha", "--k", "1,2,3"]);
    assert_eq!(stdout(&o).trim(), "7");
    assert_eq!(gtseq(&["apply", "--op", "D k9", "--k", "1,2"]).status.code(), Some(2));
}
