use std::process::{Command, Output};

use quasirandom::catalog;
use quasirandom::group::load_cayley_table;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasirandom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn groups_list_prints_every_family() {
    let out = bin(&["groups", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for prefix in ["z:", "s:", "a:", "sl2:", "psl2:", "file:"] {
        assert!(text.lines().any(|l| l.starts_with(prefix)), "{prefix}");
    }
}

#[test]
fn analyze_alternating_five() {
    let out = bin(&["analyze", "--group", "a:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["format"], 1);
    assert_eq!(v["group"]["degrees"], serde_json::json!([1, 3, 3, 4, 5]));
    assert_eq!(v["group"]["d"], 3);
    assert_eq!(v["characters"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_cyclic_theorem() {
    let out = bin(&[
        "verify", "--group", "z:6", "--check", "theorem", "--trials", "10", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["group"]["d"], 1);
    let check = &v["checks"][0];
    assert_eq!(check["name"], "theorem");
    assert_eq!(check["bound"].as_f64(), Some(4.0));
    assert_eq!(check["trials"], 10);
    assert!(check["max_observed"].as_f64().unwrap() <= 2.0);
    assert_eq!(v["parameters"]["seed"], 1);
    assert_eq!(v["parameters"]["trials"], 10);
}

#[test]
fn verify_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let out = bin(&[
        "verify",
        "--group",
        "sl2:5",
        "--check",
        "lemma,corollary,step4",
        "--trials",
        "20",
        "--seed",
        "7",
        "--out",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["lemma", "corollary", "corollary_erratum", "step4"]);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["min_margin"].as_f64().unwrap() > 0.0));
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 1 + 4 * 20);
    assert_eq!(
        rows.lines().next(),
        Some("check,trial,seed,observed,bound,margin")
    );
}

#[test]
fn verify_is_byte_stable() {
    let args = [
        "verify", "--group", "s:4", "--check", "all", "--trials", "3", "--seed", "5",
    ];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}

#[test]
fn export_cayley_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sl2_3.txt");
    let out = bin(&[
        "export-cayley",
        "--group",
        "sl2:3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let loaded = load_cayley_table("copy", &text).unwrap();
    let original = catalog::resolve("sl2:3").unwrap();
    for x in original.elements() {
        for y in original.elements() {
            assert_eq!(loaded.mul(x, y), original.mul(x, y));
        }
    }
    let id = format!("file:{}", path.display());
    let again = bin(&["analyze", "--group", &id]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(stdout_json(&again)["group"]["order"], 24);
}

#[test]
fn usage_and_io_errors_exit_one() {
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bin(&["analyze"]).status.code(), Some(1));
    assert_eq!(bin(&["analyze", "--group", "q:3"]).status.code(), Some(1));
    assert_eq!(
        bin(&["analyze", "--group", "file:/nonexistent/table"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        bin(&["verify", "--group", "s:3", "--check", "nope"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_table_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "2\n0 1\n1 1\n").unwrap();
    let out = bin(&["analyze", "--group", &format!("file:{}", path.display())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn search_reports_bound() {
    let out = bin(&[
        "search",
        "--group",
        "z:3",
        "--objective",
        "theorem",
        "--budget",
        "200",
        "--seed",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["bound"].as_f64(), Some(4.0));
    assert_eq!(v["evaluations_used"], 200);
    assert_eq!(v["trace"].as_array().unwrap().len(), 200);
}
