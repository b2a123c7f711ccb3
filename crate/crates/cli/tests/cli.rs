use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str], out: &Path) -> (i32, Value) {
    let status = Command::new(env!("CARGO_BIN_EXE_whitham-lab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("RUST_LOG", "error")
        .status()
        .unwrap();
    let summary = std::fs::read_to_string(out.join("summary.json")).unwrap();
    (status.code().unwrap(), serde_json::from_str(&summary).unwrap())
}

fn with_edit(name: &str, dir: &Path, edit: impl Fn(String) -> String) -> PathBuf {
    let text = std::fs::read_to_string(configs().join(name)).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, edit(text)).unwrap();
    path
}

#[test]
fn passing_run_exits_zero_with_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("norms.toml");
    let (code, summary) = run(&["norms", cfg.to_str().unwrap(), "--seed", "4"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(summary["status"], "pass");
    assert_eq!(summary["config"]["seed"], 4);
    assert_eq!(summary["report"]["provenance"]["seed"], 4);
    assert!(dir.path().join("norms.csv").exists());
}

#[test]
fn decay_refuses_a_box_that_wraps() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_edit("decay_1d.toml", dir.path(), |t| t.replace("length = 400.0", "length = 50.0"));
    let out = dir.path().join("out");
    let (code, summary) = run(&["decay-test", cfg.to_str().unwrap()], &out);
    assert_eq!(code, 2);
    assert_eq!(summary["status"], "error");
    assert!(summary["error"].as_str().unwrap().contains("length must be at least"));
}

#[test]
fn failed_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut constants: Value =
        serde_json::from_str(include_str!("../../core/data/constants.json")).unwrap();
    constants["gronwall_c"]["whitham1d"] = 0.01.into();
    let table = dir.path().join("constants.json");
    std::fs::write(&table, constants.to_string()).unwrap();
    let cfg = with_edit("gronwall_whitham1d.toml", dir.path(), |t| {
        format!("constants = {:?}\n{}", table.to_str().unwrap(), t.replace("members = 10", "members = 2"))
    });
    let out = dir.path().join("out");
    let (code, summary) = run(&["gronwall-check", cfg.to_str().unwrap()], &out);
    assert_eq!(code, 1);
    assert_eq!(summary["status"], "fail");
    assert!(summary["report"]["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false));
}

#[test]
fn invalid_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_edit("simulate.toml", dir.path(), |t| t.replace("eps = 0.5", "eps = 0.5\nnu = 1.0"));
    let out = dir.path().join("out");
    let (code, summary) = run(&["simulate", cfg.to_str().unwrap()], &out);
    assert_eq!(code, 2);
    assert!(summary["error"].as_str().unwrap().contains("model.nu"));
}

#[test]
fn lifespan_sweep_writes_versioned_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("lifespan_whitham1d.toml");
    let (code, _) = run(&["lifespan-sweep", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# schema: sweep v1");
    assert_eq!(lines.next().unwrap(), "eps,mu,t_double,termination,excluded,fit_group");
    assert_eq!(lines.count(), 12);
}
