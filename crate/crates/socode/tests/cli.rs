use std::path::PathBuf;
use std::process::{Command, Output};

fn socode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_socode")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("socode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_doro() {
    let o = socode(&["verify", "doro"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("{12,10,3;1,3,8}"));
}

#[test]
fn verify_graph6_file() {
    let path = scratch("k3.g6", "Bw\n");
    let o = socode(&["verify", "--graph6", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("{2;1}"));
}

#[test]
fn verify_rejects_non_drg() {
    let path = scratch("path.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3\n");
    let o = socode(&["verify", path.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn codes_doro_trivial() {
    let o = socode(&["codes", "doro", "--group", "trivial", "--p", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("I, 2, [68,8,32]_2"), "{out}");
}

#[test]
fn codes_dodd4_ternary() {
    let o = socode(&["codes", "dodd4", "--group", "trivial", "--p", "3"]);
    let out = stdout(&o);
    assert!(out.contains("I, 3, [70,26,12]_3"), "{out}");
    assert!(out.contains("I, 4, [70,26,12]_3"), "{out}");
}

#[test]
fn codes_no_admissible_relation() {
    let o = socode(&["codes", "doro", "--group", "trivial", "--p", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim().is_empty());
}

#[test]
fn codes_json_lines() {
    let o = socode(&["--json", "codes", "doro", "--group", "trivial", "--p", "2"]);
    let line = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["kind"], "code");
    assert_eq!(v["parameters"], "[68,8,32]_2");
    assert_eq!(v["weights"], serde_json::json!([32, 40]));
    assert_eq!(v["lower"], v["upper"]);
}

#[test]
fn codes_export_generator() {
    let dir = std::env::temp_dir().join(format!("socode-export-{}", std::process::id()));
    let o = socode(&["codes", "doro", "--group", "trivial", "--p", "2", "--export", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.join("doro_I_2_2.gen")).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.len() == 68 && r.bytes().all(|b| b == b'0' || b == b'1')));
}

#[test]
fn explicit_relation_must_satisfy_hypothesis() {
    let o = socode(&["codes", "doro", "--group", "trivial", "--p", "2", "--I", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("p_{1,1}^0 = 12") || err.contains("p_{1,1}^1 = 1"), "{err}");
}

#[test]
fn ring_codes_report_type() {
    let o = socode(&["ring-codes", "doro", "--group", "trivial", "--m", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("type 4^8 2^26"), "{}", stdout(&o));
}

#[test]
fn subspace_dhs_trivial() {
    let o = socode(&["subspace", "dhs", "--I", "1,4", "--group", "trivial", "--p", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(200,3,22,{0,22,44})_2"));
}

#[test]
fn subspace_hypothesis_failure_names_entry() {
    let o = socode(&["subspace", "dhs", "--I", "1,2", "--p", "2"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("p_{2,2}^0 = 77"));
}

#[test]
fn subspace_with_group_file() {
    let gens = data("dhs_e25.gens");
    let o = socode(&["--json", "subspace", "dhs", "--I", "1,4", "--group-file", &gens, "--p", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["subgroup"], "E_25");
    assert_eq!(v["n"], 8);
    assert_eq!(v["self_orthogonal"], true);
}

#[test]
fn bad_group_file_is_rejected() {
    let path = scratch("bad.gens", "(0,1)\n");
    let o = socode(&["codes", "doro", "--group-file", path.to_str().unwrap(), "--p", "2"]);
    assert!(!o.status.success());
}

#[test]
fn reproduce_intersection_table() {
    let o = socode(&["--json", "reproduce-table", "13"]);
    assert!(o.status.success());
    let last: serde_json::Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["kind"], "summary");
    assert_eq!(last["pass"], true);
}

#[test]
fn reproduce_table_reports_mismatch() {
    let o = socode(&["reproduce-table", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("p_77^2: expected 1, found 0"));
}

#[test]
fn reproduce_table_range() {
    assert!(!socode(&["reproduce-table", "15"]).status.success());
}

#[test]
fn sample_flag() {
    let o = socode(&["codes", "foster", "--sample", "Z_5", "--p", "2", "--I", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Z_5, 5, [18,4,4]_2"), "{}", stdout(&o));
}
