use std::path::Path;
use std::process::{Command, Output};

use hypersens::boolfn::TruthTable;
use hypersens::io::{encode_table, write_atomic};
use serde_json::Value;

fn hypersens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersens"))
        .args(args)
        .env_remove("HYPERSENS_WORKERS")
        .output()
        .expect("binary runs")
}

fn json_out(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn measure_or3_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("or3.tt");
    write_atomic(&table, &encode_table(&TruthTable::or(3).unwrap())).unwrap();
    let v = json_out(&hypersens(&[
        "measure",
        "--table",
        path_str(&table),
        "--measures",
        "s,bs,c",
    ]));
    assert_eq!(v["n_vars"], 3);
    for m in ["s", "bs", "c"] {
        assert_eq!(v[m]["value"], 3, "{m}");
    }
}

#[test]
fn construct_writes_minterm_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.json");
    let status = hypersens(&[
        "construct",
        "--theorem",
        "1",
        "--n",
        "12",
        "--k",
        "3",
        "--out",
        path_str(&out),
    ]);
    assert!(status.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rule"], "thm1");
    assert_eq!(v["entries"].as_array().unwrap().len(), 45);
    assert_eq!(v["roles"]["B"], serde_json::json!([11]));

    // The written file feeds back into measure through the explicit path.
    let small = dir.path().join("q.json");
    let status = hypersens(&[
        "construct",
        "--theorem",
        "3",
        "--n",
        "3",
        "--k",
        "3",
        "--out",
        path_str(&small),
    ]);
    assert!(status.status.success());
    let v = json_out(&hypersens(&[
        "measure",
        "--minterm",
        path_str(&small),
        "--measures",
        "s1",
    ]));
    assert_eq!(v["n_vars"], 27);
    assert_eq!(v["s1"]["value"], 9);
}

#[test]
fn verify_claim1_exit_code() {
    let out = hypersens(&[
        "verify", "claim1", "--k", "3", "--grid", "9:10", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3, "{text}");
}

#[test]
fn scan_and_report() {
    let v = json_out(&hypersens(&["scan", "--n", "4", "--k", "2"]));
    assert_eq!(v["properties"], 2046);
    assert_eq!(v["bound_violations"], 0);

    let a = hypersens(&[
        "--seed",
        "5",
        "report",
        "--theorem",
        "1",
        "--k",
        "3",
        "--grid",
        "9,10",
        "--effort",
        "2",
    ]);
    let b = hypersens(&[
        "--seed",
        "5",
        "--workers",
        "1",
        "report",
        "--theorem",
        "1",
        "--k",
        "3",
        "--grid",
        "9,10",
        "--effort",
        "2",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "report depends on the worker count");
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("n,k,support,s1_bound,s0_bound,s_lower,seconds\n"));
    assert!(text.contains("\n9,3,27,27,"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(
        hypersens(&["construct", "--theorem", "9", "--n", "9", "--k", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hypersens(&["verify", "claim1", "--k", "3", "--grid", "9:x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hypersens(&["measure", "--table", "/nonexistent/table"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hypersens(&["frobnicate"]).status.code(), Some(2));
}
