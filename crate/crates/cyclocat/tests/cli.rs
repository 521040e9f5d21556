//! End-to-end tests of the `cyclocat` binary: output shapes, exit codes,
//! batch isolation, and the size-limit environment variable.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclocat"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

#[test]
fn count_prints_the_sequence_term() {
    let out = run(&["count", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "8");
}

#[test]
fn count_oracle_and_explain() {
    let out = run(&["count", "--n", "5", "--explain"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("3"));
    assert!(text.contains("orbit: [0]"));
    assert!(text.contains("orbit: [1, 4]"));
    assert!(text.contains("orbit: [2, 3]"));
}

#[test]
fn equivalent_reports_plainly() {
    let out = run(&["equivalent", "--n", "5", "--a", "1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "not equivalent");
    let out = run(&["equivalent", "--n", "5", "--a", "1", "--b", "4"]);
    assert_eq!(stdout(&out), "equivalent (witness j = 2)");
}

#[test]
fn omega_plain_and_json() {
    let out = run(&[
        "omega", "--n", "2", "--zeta", "1", "--i", "1", "--j", "1", "--k", "1",
    ]);
    assert_eq!(stdout(&out), "theta^1");
    let out = run(&[
        "--json", "omega", "--n", "2", "--zeta", "1", "--i", "1", "--j", "1", "--k", "1",
    ]);
    let report: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["result"]["exponent"], 1);
    assert!(report["version"].is_string());
    assert!(report["elapsed_ms"].is_number());
}

#[test]
fn normalize_emits_the_normal_form() {
    let out = run(&[
        "normalize",
        "--n",
        "2",
        "--zeta",
        "1",
        "--expr",
        "id(1) # f ; id(1)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["shape"], "caps^1 ⊗ id^1");
    assert_eq!(v["dom"], 3);
    assert_eq!(v["cod"], 1);
    // n=2: the sliding factor zeta = theta = -1
    assert_eq!(v["scalar"]["coeffs"][0], "-1");
}

#[test]
fn normalize_trace_lists_steps() {
    let out = run(&[
        "normalize",
        "--n",
        "2",
        "--zeta",
        "1",
        "--expr",
        "id(1) # f ; id(1)",
        "--trace",
    ]);
    assert!(stdout(&out).contains("slide cap left across 1 strand(s)"));
}

#[test]
fn ill_typed_expression_is_a_domain_error() {
    let out = run(&["normalize", "--n", "2", "--zeta", "1", "--expr", "f ; f"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("arity mismatch"), "stderr: {err}");
}

#[test]
fn parse_error_carries_position() {
    let out = run(&["normalize", "--n", "2", "--zeta", "1", "--expr", "f ;; f"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1, column 4"), "stderr: {err}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["count", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_dumps_the_ast() {
    let out = run(&["parse", "--expr", "z^-1 * (g ; f)"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["node"], "scale");
    assert_eq!(v["scalar"]["zpow"], -1);
    assert_eq!(v["expr"]["node"], "compose");
}

#[test]
fn snake_constant_pentagon_autgroup_smoke() {
    let out = run(&["snake", "--n", "6", "--zeta", "5", "--k", "4"]);
    assert_eq!(stdout(&out), "snake identities: ok");
    let out = run(&["constant", "--n", "5", "--zeta", "1", "--j", "2"]);
    assert_eq!(stdout(&out), "theta^4");
    let out = run(&["pentagon", "--n", "7", "--zeta", "3"]);
    assert_eq!(stdout(&out), "pentagon: ok");
    let out = run(&["verify-cocycle", "--n", "6", "--zeta", "1"]);
    assert!(stdout(&out).contains("cocycle identity: ok"));
    let out = run(&["autgroup", "--n", "8", "--zeta", "1"]);
    assert!(stdout(&out).contains("pi0 = [1, 3, 5, 7]"));
}

#[test]
fn max_atoms_env_var_limits_rewriting() {
    let out = bin()
        .args(["normalize", "--n", "2", "--zeta", "1", "--expr", "g ; f"])
        .env("CYCLOCAT_MAX_ATOMS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeding the limit"));
}

#[test]
fn sweep_writes_results() {
    let dir = std::env::temp_dir().join("cyclocat-sweep-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("results.json");
    let out = run(&["sweep", "--max", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 10);
    let counts: Vec<u64> = rows
        .iter()
        .map(|r| r["c_formula"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![1, 2, 3, 4, 3, 6, 3, 8, 5, 6]);
    for row in &rows {
        assert_eq!(row["c_formula"], row["c_bruteforce"]);
    }
}

#[test]
fn batch_runs_items_in_isolation() {
    let dir = std::env::temp_dir().join("cyclocat-batch-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("requests.json");
    let mut items: Vec<Value> = (1..=10)
        .map(|n| serde_json::json!({ "cmd": "count", "n": n }))
        .collect();
    items.push(serde_json::json!({ "cmd": "normalize", "n": 2, "zeta": 1, "expr": "f ; f" }));
    items.push(serde_json::json!({ "cmd": "snake", "n": 4, "zeta": 1, "k": 2 }));
    std::fs::write(&path, serde_json::to_string(&items).unwrap()).unwrap();

    let out = run(&["batch", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let reports: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 12);
    let counts: Vec<u64> = reports[..10]
        .iter()
        .map(|r| r["result"]["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![1, 2, 3, 4, 3, 6, 3, 8, 5, 6]);
    // the ill-typed item fails alone; the one after it still runs
    assert!(reports[10]["error"]
        .as_str()
        .unwrap()
        .contains("arity mismatch"));
    assert_eq!(reports[11]["result"]["snake"], true);
}

#[test]
fn batch_empty_array_yields_empty_reports() {
    let dir = std::env::temp_dir().join("cyclocat-batch-empty");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.json");
    std::fs::write(&path, "[]").unwrap();
    let out = run(&["batch", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let reports: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(reports.is_empty());
}

#[test]
fn malformed_batch_file_is_a_usage_error() {
    let dir = std::env::temp_dir().join("cyclocat-batch-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["batch", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_is_deterministic_modulo_timing() {
    let a = run(&["--json", "count", "--n", "12"]);
    let b = run(&["--json", "count", "--n", "12"]);
    let mut va: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let mut vb: Value = serde_json::from_str(&stdout(&b)).unwrap();
    va["elapsed_ms"] = Value::Null;
    vb["elapsed_ms"] = Value::Null;
    assert_eq!(va, vb);
}
