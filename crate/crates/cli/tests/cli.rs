use std::process::Command;

fn hamlab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hamlab")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hamlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn fluid_replay_prints_csv() {
    let out = hamlab(&["fluid-replay", "--check"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("group,seed,"));
    assert!(text.contains("# check.atoms_t5=1"));
}

#[test]
fn out_writes_file_and_summary() {
    let path = tmp("multiclass.csv");
    let out = hamlab(&["multiclass", "--reps", "5", "--seed", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("experiment=multiclass"));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.lines().filter(|l| !l.starts_with('#')).count() > 1);
}

#[test]
fn same_seed_same_output() {
    let a = hamlab(&["multiclass", "--reps", "3", "--seed", "9"]);
    let b = hamlab(&["multiclass", "--reps", "3", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_is_read() {
    let cfg = tmp("cfg.json");
    std::fs::write(&cfg, r#"{"experiment": "multiclass", "reps": 2, "seed": 5}"#).unwrap();
    let out = hamlab(&["multiclass", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("# replicates=2"));
}

#[test]
fn parameter_errors_exit_2() {
    assert_eq!(hamlab(&["multiclass", "--reps", "0"]).status.code(), Some(2));
    assert_eq!(hamlab(&["gamma", "--dist", "bogus"]).status.code(), Some(2));
    assert_eq!(hamlab(&["product", "--alpha", "1.0"]).status.code(), Some(2));
    let cfg = tmp("wrong.json");
    std::fs::write(&cfg, r#"{"experiment": "gamma"}"#).unwrap();
    assert_eq!(hamlab(&["multiclass", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&cfg, r#"{"unknown": 1}"#).unwrap();
    assert_eq!(hamlab(&["multiclass", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hamlab(&["no-such-experiment"]).status.code(), Some(2));
}

#[test]
fn missing_config_exits_1() {
    assert_eq!(hamlab(&["multiclass", "--config", "/nonexistent/cfg.json"]).status.code(), Some(1));
}
