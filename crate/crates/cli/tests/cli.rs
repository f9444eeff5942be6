use std::process::{Command, Output};

use serde_json::Value;

fn diaglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diaglab")).args(args).env_remove("DIAGLAB_WORKERS").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn topology_documents() {
    let q3 = json(&diaglab(&["topology", "--family", "hypercube", "--n", "3"]));
    assert_eq!(q3["labels"].as_array().unwrap().len(), 8);
    assert_eq!(q3["family"], "hypercube");
    let a42 = json(&diaglab(&["topology", "--family", "arrangement", "--n", "4", "--k", "2"]));
    assert_eq!(a42["labels"].as_array().unwrap().len(), 12);
    let s42 = json(&diaglab(&["topology", "--family", "nk-star", "--n", "4", "--k", "2"]));
    assert_eq!(s42["labels"].as_array().unwrap().len(), 12);
    assert_eq!(s42["edges"].as_array().unwrap().len(), 18);
}

#[test]
fn diagnosability_values() {
    let run = |n: &str, extra: &[&str]| {
        let mut args = vec!["diag", "--family", "hypercube", "--n", n];
        args.extend_from_slice(extra);
        json(&diaglab(&args))["t"].as_u64().unwrap()
    };
    assert_eq!(run("3", &["--fault", "g-extra", "--g", "1", "--model", "mmstar"]), 3);
    assert_eq!(run("4", &["--fault", "g-extra", "--g", "1", "--model", "mmstar"]), 5);
    assert_eq!(run("3", &["--fault", "unrestricted", "--model", "pmc", "--cap", "4"]), 3);
}

#[test]
fn diag_output_ignores_worker_count() {
    let base =
        ["diag", "--family", "nk-star", "--n", "4", "--k", "2", "--fault", "g-extra", "--g", "1", "--model", "mmstar"];
    let one = diaglab(&base);
    let mut four = base.to_vec();
    four.extend(["--workers", "4"]);
    assert_eq!(one.stdout, diaglab(&four).stdout);
    assert!(String::from_utf8_lossy(&one.stderr).contains("searching"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["constructions", "formulas", "relations"] {
        let out = diaglab(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(json(&out)["pass"], true);
    }
    let out = diaglab(&["verify", "--suite", "oracles", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["seed"], 42);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "--suite", "oracles", "--seed", "7", "--pairs", "2000"];
    let a = diaglab(&args);
    let b = diaglab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_input_exits_nonzero_with_empty_stdout() {
    for args in [
        &["topology", "--family", "hypercube", "--n", "0"][..],
        &["topology", "--family", "moebius", "--n", "3"],
        &["diag", "--family", "hypercube", "--n", "3", "--fault", "bogus", "--model", "pmc"],
        &["diag", "--family", "hypercube", "--n", "3", "--model", "xyz"],
        &["catalog", "--id", "kappa_bar_g_hypercube", "--n", "3", "--g", "0"],
        &["verify", "--suite", "everything"],
    ] {
        let out = diaglab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn workers_env_fallback_is_read() {
    let out = Command::new(env!("CARGO_BIN_EXE_diaglab"))
        .args(["topology", "--family", "hypercube", "--n", "2"])
        .env("DIAGLAB_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_dump_and_evaluation() {
    let dump = json(&diaglab(&["catalog"]));
    let entries = dump.as_array().unwrap();
    assert!(entries.len() > 20);
    for key in ["id", "quantity", "family", "diagnostic", "range", "citation"] {
        assert!(entries.iter().all(|e| e.get(key).is_some()), "{key}");
    }
    let v = json(&diaglab(&["catalog", "--id", "t_bar_2_arrangement", "--n", "8", "--k", "3"]));
    assert_eq!(v["value"]["exact"], 34);
}

#[test]
fn output_flag_and_table_format() {
    let path = std::env::temp_dir().join(format!("diaglab-cli-{}.json", std::process::id()));
    let out = diaglab(&["topology", "--family", "hypercube", "--n", "2", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc["edges"].as_array().unwrap().len(), 4);

    let out = diaglab(&["kappa", "--family", "hypercube", "--n", "3", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("kappa") && l.trim_end().ends_with('3')), "{text}");
}

#[test]
fn witness_and_bound_commands() {
    let w = json(&diaglab(&["witness", "--family", "hypercube", "--n", "4", "--g", "1"]));
    assert_eq!(w["boundary_size"], 6);
    assert_eq!(w["closed_size"], 8);
    let b = json(&diaglab(&[
        "bound",
        "--family",
        "hypercube",
        "--n",
        "4",
        "--fault",
        "g-extra",
        "--g",
        "1",
        "--model",
        "pmc",
    ]));
    assert_eq!(b["lower"]["value"], 7);
    assert_eq!(b["upper"]["value"], 7);
}
