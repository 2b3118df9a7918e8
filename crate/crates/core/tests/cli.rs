use std::path::PathBuf;
use std::process::{Command, Output};

fn latfun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latfun")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "data", name].iter().collect();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lattice_check_file() {
    let o = latfun(&["lattice", "check", &data("n5.lat")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid lattice; distributive: false; witness: (z,x,y)\n");
}

#[test]
fn invalid_lattice_is_a_check_failure() {
    let dir = std::env::temp_dir().join(format!("latfun-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.lat");
    std::fs::write(&path, "lattice bad\nelements: 0 x y 1\ncovers: 0<x 0<y\n").unwrap();
    let o = latfun(&["lattice", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid lattice:"));

    std::fs::write(&path, "lattice bad\nelements 0 1\n").unwrap();
    let o = latfun(&["lattice", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.lat:2"));
}

#[test]
fn classify_counterexample() {
    let o = latfun(&["functional", "classify", "--lattice", "chain3", "--table", &data("symmetric_counterexample.tbl")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("homogeneous=true\n"));
    assert!(out.contains("nondecreasing=false\n"));

    let o = latfun(&["--json", "functional", "classify", "--lattice", "chain4", "--table", &data("median_with_constant.tbl")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sugeno"], true);
    assert_eq!(v["invariant"], false);
}

#[test]
fn table_for_another_lattice_is_rejected() {
    let o = latfun(&["functional", "classify", "--lattice", "chain4", "--table", &data("symmetric_counterexample.tbl")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sugeno_eval() {
    let o = latfun(&["sugeno", "eval", "--lattice", "chain3", "--capacity", &data("majority.cap"), "--at", "1,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn crosscut_reports_both_cones() {
    let o = latfun(&["duality", "crosscut", "--lattice", "n5", "--hfamily", "{y,z}", "--kfamily", "{0,x,y},{0,x,z}"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ultracone lower = x, upper = z\n"), "{out}");
    assert!(out.contains("ultracone equality: false"));

    let o = latfun(&["duality", "crosscut", "--lattice", "n5", "--hfamily", "{y}", "--kfamily", "{z}"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_schema() {
    let o = latfun(&["--json", "verify", "--suite", "thm34", "--seed", "3", "--lattice", "n5", "--deterministic"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for field in ["suite", "instances", "failures", "elapsed"] {
        assert!(v.get(field).is_some(), "{field}");
    }
    assert_eq!(v["elapsed"], 0.0);

    let o = latfun(&["verify", "--suite", "thm99"]);
    assert_eq!(o.status.code(), Some(2));
}
