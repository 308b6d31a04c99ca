use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn kmu(args: &[&str], file: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmu")).args(args).arg(file).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn verify_reports_invariants_and_passes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"n": 2, "alpha": "0", "beta": "2"}"#);
    let out = kmu(&["verify"], &f);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["invariants"]["kappa"], "0");
    assert_eq!(r["invariants"]["mu"], "4");
    assert_eq!(r["invariants"]["boeckx_I"], "-1");
    assert_eq!(r["pass"], true);
    assert!(r["records"].as_array().unwrap().iter().all(|x| x["status"] == "pass" && x["residual"] == "0"));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "m.json",
        r#"{"n": 3, "alpha": "1", "beta": "3", "deformation_a": "1/3",
            "submanifolds": [{"kind": "x"}, {"kind": "diag", "c": "2", "d": "1"}]}"#,
    );
    let a = kmu(&["verify"], &f);
    let b = kmu(&["verify"], &f);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn degenerate_model_fails_with_stage() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"n": 2, "alpha": "1", "beta": "1"}"#);
    let out = kmu(&["verify"], &f);
    assert_ne!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("stage: build model") && err.contains("degenerate"), "{err}");
}

#[test]
fn floats_are_rejected() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"n": 2, "alpha": "0.5", "beta": "2"}"#);
    assert_ne!(kmu(&["verify"], &f).status.code(), Some(0));
    let g = write(&dir, "g.json", r#"{"n": 2, "alpha": 0, "beta": "2"}"#);
    assert_ne!(kmu(&["verify"], &g).status.code(), Some(0));
}

#[test]
fn deform_emits_before_and_after() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"n": 3, "alpha": "1", "beta": "3"}"#);
    let out = kmu(&["deform", "--a", "2"], &f);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let d = &r["deformation"];
    assert_eq!(d["before"]["kappa"], "-3");
    assert_eq!(d["after"]["kappa"], "0");
    assert_eq!(d["after"]["mu"], "9/2");
    assert_eq!(d["after"]["boeckx_I"], "-5/4");
    assert_ne!(kmu(&["deform", "--a", "-1"], &f).status.code(), Some(0));
    assert_ne!(kmu(&["deform"], &f).status.code(), Some(0));
}

#[test]
fn submanifold_mixed_and_diagonal() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"n": 4, "alpha": "1", "beta": "2"}"#);
    let out = kmu(&["submanifold", "--kind", "mixed", "--k", "2"], &f);
    assert_eq!(out.status.code(), Some(0));
    let s = &json(&out)["submanifolds"][0];
    assert_eq!(s["classification"], "totally_geodesic");
    assert_eq!(s["tn_split"], serde_json::json!([2, 2]));

    let out = kmu(&["submanifold", "--kind", "mixed", "--z-choices", "y,x"], &f);
    assert_eq!(json(&out)["submanifolds"][0]["params"], serde_json::json!(["y", "x"]));

    let out = kmu(&["submanifold", "--kind", "diag", "--c", "1", "--d", "-1/2"], &f);
    assert_eq!(out.status.code(), Some(0));
    let s = &json(&out)["submanifolds"][0];
    assert_eq!(s["classification"], "totally_umbilical");
    assert_eq!(s["theta"]["sin"], "3/5");
    assert_eq!(s["theta"]["cos"], "4/5");

    assert_ne!(kmu(&["submanifold", "--kind", "diag", "--c", "0", "--d", "1"], &f).status.code(), Some(0));
}

#[test]
fn sweep_rejects_rows_and_sorts() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "g.json",
        r#"{"n": 2, "alpha": ["2", "0"], "beta": ["3", "1"]}"#,
    );
    let out = Command::new(env!("CARGO_BIN_EXE_kmu")).env("KMU_THREADS", "2").arg("sweep").arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let rows: Vec<(String, String)> = r["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["alpha"].as_str().unwrap().into(), p["beta"].as_str().unwrap().into()))
        .collect();
    assert_eq!(rows, vec![("0".into(), "1".into()), ("0".into(), "3".into()), ("2".into(), "3".into())]);
    assert_eq!(r["rejected"].as_array().unwrap().len(), 1);
    assert_eq!(r["summary"]["max_boeckx_i"], "-1");

    let empty = write(&dir, "e.json", r#"{"n": 2}"#);
    assert_ne!(kmu(&["sweep"], &empty).status.code(), Some(0));
}

#[test]
fn dump_tables_lists_nonzero_entries() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", r#"{"n": 2, "alpha": "0", "beta": "2"}"#);
    let out_file = dir.path().join("tables.json");
    let out = Command::new(env!("CARGO_BIN_EXE_kmu"))
        .args(["dump-tables", "--output"])
        .arg(&out_file)
        .arg(&f)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let t: Value = serde_json::from_str(&std::fs::read_to_string(out_file).unwrap()).unwrap();
    // ∇_{Y₁}Y₁ = βY₂: Γ^{Y₂}_{Y₁Y₁} = 2
    let hit = t["connection"].as_array().unwrap().iter().any(|e| e["index"] == serde_json::json!([3, 3, 4]) && e["value"] == "2");
    assert!(hit);
    assert!(t["curvature"].as_array().unwrap().iter().all(|e| e["value"] != "0"));
}
