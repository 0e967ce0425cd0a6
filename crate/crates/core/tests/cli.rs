use std::io::Write;
use std::process::{Command, Output};

use cqg_core::report::{Status, VerificationReport};

fn cqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqg")).args(args).env_remove("CQG_STEP_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_report(o: &Output) -> VerificationReport {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_ybe_passes_in_json() {
    let o = cqg(&["--format", "json", "verify", "ybe"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_report(&o);
    assert_eq!(r.checks.len(), 2);
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let a = json_report(&cqg(&["--format", "json", "verify", "hopf"]));
    let b = json_report(&cqg(&["--format", "json", "verify", "hopf"]));
    assert_eq!(a.without_timing(), b.without_timing());
    let back: VerificationReport = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
}

#[test]
fn calculus_text_shows_the_tables() {
    let o = cqg(&["verify", "calculus"]);
    let text = stdout(&o);
    assert!(text.contains("ω¹ a_lambda = "), "{text}");
    assert!(text.contains("calculus.leibniz"));
}

#[test]
fn reported_checks_do_not_gate() {
    let o = cqg(&["--format", "json", "verify", "rll"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_report(&o);
    assert!(!r.checks.is_empty());
    assert!(r.checks.iter().all(|c| c.status == Status::Reported && c.residual_terms > 0));
}

#[test]
fn config_errors_exit_two_with_a_line_number() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "palette = [\n  \"lambda\",\n  oops\n").unwrap();
    let o = cqg(&["--config", f.path().to_str().unwrap(), "verify", "ybe"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    let o = cqg(&["--config", "/nonexistent/cqg.toml", "verify", "ybe"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_selects_the_palette() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "palette = [\"lambda\", \"mu\", \"nu\"]").unwrap();
    let o = cqg(&["--config", f.path().to_str().unwrap(), "dump", "relations"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("->")).count(), 66);
}

#[test]
fn exhausted_step_budget_fails_the_run() {
    let o = Command::new(env!("CARGO_BIN_EXE_cqg"))
        .args(["--format", "json", "verify", "rtt"])
        .env("CQG_STEP_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(json_report(&o).checks.iter().any(|c| c.status == Status::Fail));
}

#[test]
fn dump_relations_lists_every_rule() {
    let o = cqg(&["dump", "relations"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("->")).count(), 28);
    let o = cqg(&["--format", "json", "dump", "relations"]);
    let rules: Vec<(String, String)> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rules.len(), 28);
}

#[test]
fn colour_overrides_reach_the_colourless_point() {
    let o = cqg(&["--colour", "lambda=0", "--colour", "mu=0", "--format", "json", "verify", "duality"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_report(&o).checks.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = cqg(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}
