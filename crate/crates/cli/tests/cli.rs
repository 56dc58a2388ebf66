use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn jcmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jcmix"))
        .args(args)
        .output()
        .expect("spawn jcmix")
}

fn stderr_line(out: &Output) -> String {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "{text}");
    text.trim_end().to_string()
}

fn short_grid(out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["--t-max", "5", "--steps", "10", "-q", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    jcmix(&args)
}

#[test]
fn csv_to_stdout() {
    let out = jcmix(&["--t-max", "1", "--steps", "4", "-q"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,W,xi_F,S_A,S_F_mix_analytic,S_F_oracle,pi_cc,pi_ss,pi_cs_abs,valid"
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 10);
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
    assert!((first[1].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    assert!((first[4].parse::<f64>().unwrap() - std::f64::consts::LN_2).abs() < 1e-10);
    assert_eq!(lines.count(), 4);
}

#[test]
fn json_without_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let out = short_grid(&path, &["--format", "json", "--no-oracle"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r["S_F_oracle"].is_null()));
    assert_eq!(rows[10]["t"], 5.0);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let report = dir.path().join("report.json");
    fs::write(
        &cfg,
        "# mixed field\nalpha_re = 3\nalpha-im = 0.5\np_plus = 0.25\nsteps = 20\nt_max = 4\n",
    )
    .unwrap();
    let out = short_grid(
        &dir.path().join("run.csv"),
        &["--config", cfg.to_str().unwrap(), "--p-plus", "0.75", "--report", report.to_str().unwrap()],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&fs::read(&report).unwrap()).unwrap();
    assert_eq!(report["config"]["p_plus"], 0.75);
    assert_eq!(report["config"]["t_max"], 5.0);
    assert_eq!(report["config"]["steps"], 10);
    assert_eq!(report["points"], 11);
    assert!(report["config_text"].as_str().unwrap().contains("alpha_im"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = jcmix(&["--t-max", "3", "--steps", "12", "-q", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn invalid_probability_is_rejected() {
    let out = jcmix(&["--p-plus", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(stderr_line(&out).starts_with("error: invalid-config: "));
}

#[test]
fn unknown_flag_and_format_are_config_errors() {
    for args in [&["--frobnicate"][..], &["--format", "xml"][..], &["--steps", "ten"][..]] {
        let out = jcmix(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr_line(&out).starts_with("error: invalid-config: "));
    }
}

#[test]
fn small_truncation_is_reported() {
    let out = jcmix(&["--dim", "8", "--steps", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_line(&out).starts_with("error: truncation-insufficient: "));
}

#[test]
fn missing_config_file_is_io() {
    let out = jcmix(&["--config", "/nonexistent/jcmix.cfg"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_line(&out).starts_with("error: io: "));
}

#[test]
fn summary_goes_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let out = jcmix(&["--t-max", "2", "--steps", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("validity window"));
}
