use salg_core::algebra::examples::quaternions;
use salg_core::algebra::json::to_json;
use salg_core::symplectic::twisted_group_algebra_std;
use std::path::PathBuf;
use std::process::{Command, Output};

fn salg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salg")).args(args).output().expect("salg runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("salg-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = salg(&["verify", "nonsense", "--alg", "quaternion"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn inapplicable_suite_is_a_usage_error() {
    let o = salg(&["verify", "oscillator", "--alg", "quaternion"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn list_suites_prints_every_suite() {
    let o = salg(&["list-suites"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(names.len(), 19);
    assert!(names.iter().any(|n| n == "modm"));
}

#[test]
fn inspect_reports_dimension_degree_and_azumaya() {
    let dir = scratch("inspect");
    let h = dir.join("h.json");
    std::fs::write(&h, to_json(&quaternions())).unwrap();
    let o = salg(&["inspect", h.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("dim 4, degree 2, Azumaya: yes"), "{}", stdout(&o));

    let t = dir.join("t.json");
    std::fs::write(&t, to_json(twisted_group_algebra_std(3, 2).unwrap().algebra())).unwrap();
    let o = salg(&["inspect", t.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("dim 9, degree 3"), "{}", stdout(&o));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = scratch("malformed");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2,").unwrap();
    let o = salg(&["inspect", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = salg(&["verify", "s-structure", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_writes_a_report_with_the_degree() {
    let dir = scratch("report");
    let path = dir.join("r.json");
    let o = salg(&["verify", "s-structure", "--q", "3", "--d", "2", "--report", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS s-structure/twisted q=3 d=2 psi^1"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v[0]["derived"]["degree"], "3");
    assert_eq!(v[0]["status"], "pass");
    assert!(v[0].get("timing_ms").is_none());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn suite_flag_and_timing() {
    let o = salg(&["verify", "--suite", "zigzag", "--alg", "quaternion", "--timing"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("PASS zigzag/quaternion"));
    assert!(out.contains("timing_ms"));
}

#[test]
fn eta_on_the_super_clifford_line() {
    let o = salg(&["verify", "eta", "--example", "clifford-super"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let json = &out[out.find('[').unwrap()..];
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v[0]["derived"]["line_sign"], -1);
}

#[test]
fn split_product_fails_the_azumaya_check() {
    let o = salg(&["verify", "azumaya", "--alg", "qxq"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL azumaya/qxq"));
}

#[test]
fn matrices_over_a_cyclotomic_field() {
    let o = salg(&["verify", "enumerate", "--alg", "m2", "--field", r#"{"kind":"cyclotomic","N":3}"#]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = salg(&["verify", "enumerate", "--alg", "m2", "--field", "{not json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn golden_drift_and_missing_entries_are_reported() {
    let dir = scratch("golden");
    let path = dir.join("g.json");
    let p = path.to_str().unwrap();
    assert!(salg(&["golden", "regen", "--golden", p]).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut g: serde_json::Value = serde_json::from_str(&text).unwrap();
    g["endx/quaternion"]["udim_x"] = "-2".into();
    std::fs::write(&path, serde_json::to_string_pretty(&g).unwrap()).unwrap();
    let o = salg(&["golden", "check", "--golden", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("drift: endx/quaternion udim_x"), "{}", stdout(&o));

    std::fs::write(&path, "").unwrap();
    let o = salg(&["golden", "check", "--golden", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("missing: oscillator/twisted q=3 d=2 psi^1"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_against_the_pinned_golden_file() {
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/../../golden/constants.json");
    let o = salg(&["verify", "oscillator", "--q", "3", "--golden", golden]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("GOLDEN"));
}
