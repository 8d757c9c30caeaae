use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn effhull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effhull")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn values(text: &[u8]) -> Vec<f64> {
    String::from_utf8_lossy(text).lines().map(|l| l.trim().parse().unwrap()).collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_sink_witness() {
    let o = effhull(&["check", "--matrix", path(&data("worked4.csv")), "--vector", path(&data("worked4_w.csv"))]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["verdict"], "inefficient");
    assert_eq!(v["witness"]["vertices"], serde_json::json!([4]));
    assert_eq!(v["witness"]["kind"], "sink");

    let o = effhull(&[
        "check", "--method", "recursive",
        "--matrix", path(&data("worked4.csv")), "--vector", path(&data("worked4_w.csv")),
    ]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["method"], "recursive");
}

#[test]
fn hull_test_on_three_block_example() {
    let o = effhull(&["hull-test", "--matrix", path(&data("three_block.csv"))]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["contained"], "yes");
    assert_eq!(v["classification"]["kind"], "three-block");

    let o = effhull(&["hull-test", "--matrix", path(&data("worked4.csv"))]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["contained"], "no");
}

#[test]
fn classify_json() {
    let o = effhull(&["classify", "--matrix", path(&data("three_block.csv"))]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["block_indices"], serde_json::json!([1, 2, 3]));
    assert_eq!((v["a12"].as_f64(), v["a13"].as_f64(), v["a23"].as_f64()), (Some(4.0), Some(3.0), Some(2.0)));
}

#[test]
fn generate_vectors() {
    let o = effhull(&["generate", "--matrix", path(&data("J4.csv")), "--kind", "perron"]);
    assert_eq!(code(&o), 0);
    assert_eq!(values(&o.stdout), vec![0.25; 4]);

    let dir = tempfile::tempdir().unwrap();
    let alpha = dir.path().join("alpha.csv");
    std::fs::write(&alpha, "1,1,1,0\n").unwrap();
    for kind in ["convex", "wgm"] {
        let o = effhull(&["generate", "--matrix", path(&data("worked4.csv")), "--kind", kind, "--alpha", path(&alpha)]);
        assert_eq!(code(&o), 0, "{kind}");
        assert_eq!(values(&o.stdout).len(), 4);
    }
    let o = effhull(&["generate", "--matrix", path(&data("worked4.csv")), "--kind", "convex"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn emitted_vectors_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["perron", "singular", "geomean", "arith"] {
        let out = dir.path().join(format!("{kind}.csv"));
        let o = effhull(&["generate", "--matrix", path(&data("three_block.csv")), "--kind", kind, "--out", path(&out)]);
        assert_eq!(code(&o), 0);
        let o = effhull(&["check", "--matrix", path(&data("three_block.csv")), "--vector", path(&out)]);
        assert_eq!(code(&o), 0, "{kind} should be efficient");
    }
}

#[test]
fn witness_outputs() {
    let o = effhull(&["witness", "--family", "triangular", "--params", "5,4,2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(values(&o.stdout).len(), 5);
    let side: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(side["certificate"]["verdict"], "inefficient");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let o = effhull(&["witness", "--family", "3block", "--params", "4,8.2,2", "--out", path(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(values(&std::fs::read(&out).unwrap()).len(), 4);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(side["family"], "3block");

    assert_eq!(code(&effhull(&["witness", "--family", "3block", "--params", "4,8,2"])), 3);
    assert_eq!(code(&effhull(&["witness", "--family", "3block", "--params", "4,8"])), 2);
    assert_eq!(code(&effhull(&["witness", "--family", "3block", "--params", "0.5,0.2,4"])), 4);
}

#[test]
fn experiments() {
    let o = effhull(&["experiment", "table2", "--n", "4", "--a13", "8,12", "--trials", "300", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v[0]["entries"][0]["inefficient_count"], 0);
    assert!(v[0]["entries"][1]["inefficient_count"].as_u64().unwrap() > 0);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trials.csv");
    let matrix = data("three_block.csv");
    let args = ["experiment", "compare", "--matrix", path(&matrix), "--trials", "10", "--seed", "9", "--out", path(&out)];
    assert_eq!(code(&effhull(&args)), 0);
    let first = std::fs::read_to_string(&out).unwrap();
    assert!(first.starts_with("trial,norm_convex,norm_geometric\n"));
    assert_eq!(first.lines().count(), 11);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert!(side["reference"]["perron"].as_f64().unwrap() > 0.0);
    assert_eq!(code(&effhull(&args)), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
}

#[test]
fn usage_and_runtime_errors() {
    assert_eq!(code(&effhull(&["check", "--bogus"])), 2);
    assert_eq!(code(&effhull(&[])), 2);
    assert_eq!(code(&effhull(&["--rtol", "2", "classify", "--matrix", path(&data("J4.csv"))])), 2);
    assert_eq!(code(&effhull(&["classify", "--matrix", "/nonexistent/a.csv"])), 4);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "1,2\n2,1\n").unwrap();
    let o = effhull(&["classify", "--matrix", path(&bad)]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("reciprocal"));

    let o = effhull(&["--version"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("0.1.0"));
}
