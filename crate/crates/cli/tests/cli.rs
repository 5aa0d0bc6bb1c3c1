use std::path::Path;
use std::process::{Command, Output};

fn fusionloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionloc")).args(args).env_remove("FUSIONLOC_ORDER_BOUND").output().expect("run fusionloc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_s4_reports_centric_radicals() {
    let o = fusionloc(&["classify", "--builtin", "S4", "--prime", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let subs = v[0]["subgroups"].as_array().unwrap();
    let cr: Vec<u64> = subs.iter().filter(|s| s["flags"]["centric_radical"] == true).map(|s| s["order"].as_u64().unwrap()).collect();
    assert_eq!(cr, vec![8, 4]);
    assert!(subs.iter().filter(|s| s["order"] != 1).all(|s| s["flags"]["subcentric"] == true));
    let orders: Vec<u64> = subs.iter().map(|s| s["order"].as_u64().unwrap()).collect();
    assert!(orders.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn classify_c2xa5_flags_central_involution() {
    let o = fusionloc(&["classify", "--builtin", "C2xA5", "--prime", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let z = v[0]["subgroups"].as_array().unwrap().iter().find(|s| s["generators"] == serde_json::json!(["(6 7)"])).unwrap().clone();
    assert_eq!(z["flags"]["subcentric"], true);
    assert_eq!(z["flags"]["delta_star"], false);
}

#[test]
fn build_all_objects_of_a5() {
    let o = fusionloc(&["build", "--builtin", "A5", "--prime", "2", "--objects", "all", "--export", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.matches("subgraph cluster_").count(), 3);
}

#[test]
fn build_theta_quotient_of_s4_is_trivial() {
    let o = fusionloc(&["build", "--builtin", "S4", "--prime", "2", "--objects", "delta-star", "--quotient-theta"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("carrier 24"));
    assert!(stdout(&o).contains("Theta of order 1"));
}

#[test]
fn build_trivial_group() {
    let o = fusionloc(&["build", "--builtin", "C1", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("carrier 1, |S| = 1, 1 objects"));
}

#[test]
fn build_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a4");
    let o = fusionloc(&["build", "--builtin", "A4", "--prime", "2", "--export", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let loc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("locality.json")).unwrap()).unwrap();
    let size = loc["size"].as_u64().unwrap() as usize;
    assert_eq!(loc["labels"].as_array().unwrap().len(), size);
    assert!(loc["products"].as_array().unwrap().iter().all(|t| t.as_array().unwrap().len() == 3));
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("transporter.json")).unwrap()).unwrap();
    assert!(t["aut_orders"].as_object().unwrap().len() == t["objects"].as_array().unwrap().len());
    assert!(out.join("checks.json").exists());
    assert!(!out.join("failures.json").exists());
}

#[test]
fn theta_requires_delta_star() {
    let o = fusionloc(&["build", "--builtin", "S4", "--objects", "all", "--quotient-theta"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn group_files_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let perms = write(dir.path(), "s3.json", r#"{"name": "Sym3", "degree": 3, "generators": [[[1, 2, 3]], [[1, 2]]]}"#);
    let table = write(dir.path(), "c3.json", r#"{"name": "C3", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}"#);
    let a = fusionloc(&["verify", "--file", &perms, "--json"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert!(stdout(&a).contains("\"Sym3@3\""));
    let b = fusionloc(&["classify", "--file", &table, "--prime", "3"]);
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&b).contains("C3 at p=3"));
}

#[test]
fn bad_input_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"name": "x", "degree": 3, "generators": [[[1, 1]]]}"#);
    assert_eq!(fusionloc(&["classify", "--file", &bad]).status.code(), Some(3));
    let table = write(dir.path(), "t.json", r#"{"name": "x", "table": [[0, 1], [1, 1]]}"#);
    assert_eq!(fusionloc(&["classify", "--file", &table]).status.code(), Some(3));
    assert_eq!(fusionloc(&["classify", "--builtin", "nope"]).status.code(), Some(3));
    assert_eq!(fusionloc(&["classify", "--builtin", "S4", "--prime", "5"]).status.code(), Some(3));
    assert_eq!(fusionloc(&["classify", "--builtin", "S4", "--prime", "4"]).status.code(), Some(3));
    assert_eq!(fusionloc(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn order_bound_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fusionloc")).args(["classify", "--builtin", "A5"]).env("FUSIONLOC_ORDER_BOUND", "59").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound 59"));
    let o = Command::new(env!("CARGO_BIN_EXE_fusionloc")).args(["classify", "--builtin", "A5"]).env("FUSIONLOC_ORDER_BOUND", "60").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn empty_corpus_is_an_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", "[]");
    let o = fusionloc(&["corpus", "--manifest", &m, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn manifest_entries_and_only_filter() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "q.json", r#"{"name": "Quat", "degree": 8, "generators": [[[1, 2, 3, 4], [5, 6, 7, 8]], [[1, 5, 3, 7], [2, 8, 4, 6]]]}"#);
    let m = write(dir.path(), "m.json", r#"[{"builtin": "S3", "prime": 3, "notes": "small"}, {"file": "q.json"}]"#);
    let o = fusionloc(&["corpus", "--manifest", &m, "--json", "--only", "L3.1*"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    let subjects: Vec<&str> = rows.iter().map(|r| r["instance"].as_str().unwrap()).collect();
    assert_eq!(subjects, vec!["Quat@2", "S3@3"]);
    assert!(rows.iter().all(|r| r["check_id"] == "L3.1-equiv" && r["status"] == "pass"));
}

#[test]
fn reports_are_sorted_by_check_then_instance() {
    let o = fusionloc(&["verify", "--builtin", "A4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<(String, String)> =
        v.as_array().unwrap().iter().map(|r| (r["check_id"].as_str().unwrap().to_string(), r["instance"].as_str().unwrap().to_string())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for r in v.as_array().unwrap() {
        match r["status"].as_str().unwrap() {
            "fail" => assert!(r["witness"].is_string()),
            "skipped" => assert!(r["reason"].is_string()),
            _ => assert!(r.get("witness").is_none()),
        }
    }
}

#[test]
fn fail_fast_and_table_output() {
    let o = fusionloc(&["verify", "--builtin", "S3", "--fail-fast"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().contains("0 fail"));
}
