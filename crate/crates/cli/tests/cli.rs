use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn obound(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_obound"))
        .args(args)
        .env_remove("OBOUND_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const FIVE_CYCLE: &str = r#"{"n": 5, "labels": ["A", "B", "C", "D", "E"],
  "edges": [{"i": 0, "j": 1, "value": 1}, {"i": 1, "j": 2, "value": 1}, {"i": 2, "j": 3, "value": 0.75},
            {"i": 3, "j": 4, "value": 0.75}, {"i": 4, "j": 0, "value": 1}]}"#;

fn edge(doc: &Value, i: u64, j: u64) -> &Value {
    doc["edges"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["i"] == i && e["j"] == j)
        .unwrap()
}

#[test]
fn infer_five_cycle_pins_r_ce() {
    let o = obound(&["infer", "-"], Some(FIVE_CYCLE));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ce = edge(&doc, 2, 4);
    assert_eq!(ce["value"], serde_json::json!([1.0, 1.0]));
    assert_eq!(ce["provenance"], "inferred");
    assert_eq!(doc["metadata"]["converged"], "true");
    assert_eq!(doc["edges"].as_array().unwrap().len(), 10);
}

#[test]
fn infer_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let o = obound(&["infer", "-"], Some(FIVE_CYCLE));
    std::fs::write(&first, &o.stdout).unwrap();
    let o2 = obound(&["infer", first.to_str().unwrap()], None);
    assert_eq!(o2.status.code(), Some(0), "{}", stderr(&o2));
    let a: Value = serde_json::from_slice(&o.stdout).unwrap();
    let b: Value = serde_json::from_slice(&o2.stdout).unwrap();
    assert_eq!(a["edges"], b["edges"]);
    assert_eq!(a["labels"], b["labels"]);
}

#[test]
fn infeasible_triangle_exits_2_with_labelled_witness() {
    let doc = r#"{"n": 3, "labels": ["A", "B", "C"],
      "edges": [{"i": 0, "j": 1, "value": 1}, {"i": 0, "j": 2, "value": 1}, {"i": 1, "j": 2, "value": 0}]}"#;
    let o = obound(&["infer", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(2));
    let out: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["status"], "infeasible");
    assert_eq!(out["witness"]["pair"], serde_json::json!(["B", "C"]));
    assert_eq!(out["witness"]["apex"], "A");
}

#[test]
fn empty_edge_list_warns_and_leaves_everything_open() {
    let o = obound(&["infer", "-", "--format", "csv"], Some(r#"{"n": 3, "edges": []}"#));
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("disconnected"));
    assert_eq!(
        stdout(&o),
        "i,j,lo,hi,provenance\n0,1,0.0,1.0,inferred\n0,2,0.0,1.0,inferred\n1,2,0.0,1.0,inferred\n"
    );
}

#[test]
fn unknown_fields_only_warn() {
    let doc = r#"{"n": 2, "edges": [{"i": 0, "j": 1, "value": 0.5, "sigma": 0.01}], "comment": "x"}"#;
    let o = obound(&["infer", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(0));
    let err = stderr(&o);
    assert!(err.contains("`comment`") && err.contains("edges[0].sigma"), "{err}");
}

#[test]
fn input_errors_exit_1() {
    for doc in [
        r#"{"n": 2, "edges": [{"i": 0, "j": 1, "value": 1.5}]}"#,
        r#"{"n": 2, "edges": [{"i": 0, "j": 0, "value": 0.5}]}"#,
        r#"{"n": 2, "edges": [{"i": 0, "j": 1,"#,
    ] {
        let o = obound(&["infer", "-"], Some(doc));
        assert_eq!(o.status.code(), Some(1), "{doc}");
        assert!(stderr(&o).starts_with("error:"));
    }
    let o = obound(&["infer", "/nonexistent/graph.json"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dot_marks_inferred_edges_dashed() {
    let o = obound(&["infer", "-", "--format", "dot"], Some(r#"{"n": 3, "edges": [{"i": 0, "j": 1, "value": 0.75}, {"i": 0, "j": 2, "value": 0.75}]}"#));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph overlaps {"));
    assert!(dot.contains("0 -- 1 [style=solid, label=\"0.75\"]"));
    assert!(dot.contains("1 -- 2 [style=dashed, label=\"[0.25, 1]\"]"), "{dot}");
}

#[test]
fn plot_data_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let o = obound(
        &["infer", "-", "--model", "qubit", "--emit-plot-data", path.to_str().unwrap(), "--plot-steps", "11"],
        Some(FIVE_CYCLE),
    );
    assert_eq!(o.status.code(), Some(0));
    let grid = std::fs::read_to_string(path).unwrap();
    assert!(grid.starts_with("r_ab,r_ac,lo,hi\n"));
    assert_eq!(grid.lines().count(), 1 + 11 * 11);
}

#[test]
fn classical_violation_exits_3() {
    let doc = r#"{"n": 3, "edges": [{"i": 0, "j": 1, "value": 0.75}, {"i": 0, "j": 2, "value": 0.75}, {"i": 1, "j": 2, "value": 0.25}]}"#;
    let o = obound(&["classical", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(3));
    let out: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let magnitudes: Vec<f64> = out["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["magnitude"].as_f64().unwrap())
        .collect();
    assert!(magnitudes.iter().any(|m| (m - 0.25).abs() < 1e-12), "{magnitudes:?}");
}

#[test]
fn classical_all_ones_is_consistent() {
    let doc = r#"{"n": 4, "edges": [{"i": 0, "j": 1, "value": 1}, {"i": 1, "j": 2, "value": 1}, {"i": 2, "j": 3, "value": 1}]}"#;
    let o = obound(&["classical", "-"], Some(doc));
    assert_eq!(o.status.code(), Some(0));
    let out: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for b in out["lower_bounds"].as_array().unwrap() {
        assert_eq!(b["bound"].as_f64(), Some(1.0));
    }
}

#[test]
fn witness_dim_verdicts() {
    for (args, line, code) in [
        (["0", "0", "0"], "RequiresDimensionAtLeast3", 3),
        (["0", "0", "1"], "ConsistentWithQubits", 0),
        (["1", "1", "0"], "InfeasibleForPureStates", 2),
    ] {
        let o = obound(&["witness-dim", "--r-ab", args[0], "--r-ac", args[1], "--r-bc", args[2]], None);
        assert_eq!(stdout(&o).trim(), line);
        assert_eq!(o.status.code(), Some(code));
    }
    let o = obound(&["witness-dim", "--r-ab", "-0.5", "--r-ac", "0", "--r-bc", "0"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "--suite", "max-violation"],
        vec!["verify", "--suite", "triangle", "--trials", "100"],
        vec!["verify", "--suite", "polytope", "--m", "8"],
        vec!["verify", "--suite", "classical-paths", "--trials", "20", "--seed", "7"],
    ] {
        let o = obound(&args, None);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["passed"], true);
    }
}

#[test]
fn max_violation_reports_a_quarter() {
    let o = obound(&["verify", "--suite", "max-violation"], None);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for row in report["details"].as_array().unwrap() {
        assert_eq!(row["d"], "0.250000");
    }
}

#[test]
fn polytope_reports_facet_dimensions() {
    let o = obound(&["polytope", "--m", "8"], None);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = report["details"]["inequalities"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["facet_dimension"] == 8 && r["violations"] == 0));
}

#[test]
fn seed_defaults_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_obound"))
        .args(["verify", "--suite", "mixed-qubit", "--trials", "10"])
        .env("OBOUND_SEED", "1234")
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["seed"], 1234);
}
