use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgroups")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn marked_iso_example_exits_zero() {
    assert_eq!(code(&["iso", "--marked", "<a|a^2>", "<a|a^2,a^4>", "--budget", "100000"]), 0);
}

#[test]
fn abstract_iso_ships_its_substitutions() {
    let out = stdout(&["iso", "--abstract", "<a,b|b>", "<a|>", "--budget", "100000", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "accepted");
    assert!(v["certificate"]["forward"].is_array());
    assert!(v["certificate"]["backward"].is_array());
}

#[test]
fn extract_example_prints_the_frozen_prefix() {
    let args = ["extract", "--budget", "1000000", "--relators", "a^6,a^10", "--target", "<a|a^6,a^10>"];
    assert_eq!(code(&args), 0);
    assert!(stdout(&args).contains("{a^6, a^10}"));
}

#[test]
fn witness_reports_relations() {
    assert_eq!(code(&["witness", "--N", "3"]), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["witness", "--N", "2", "--format", "json"])).unwrap();
    assert_eq!(v["certificate"]["square_is_identity"], true);
    assert_eq!(v["certificate"]["fails_at_N_plus_1"], true);
    assert_eq!(v["certificate"]["commutes_up_to_N"], serde_json::json!([false, false]));
    assert_eq!(v["outcome"], "no");
}

#[test]
fn decided_answers_map_to_zero_and_one() {
    assert_eq!(code(&["wp", "cyclic:6", "a^12", "--budget", "100"]), 0);
    assert_eq!(code(&["wp", "cyclic:6", "a^5", "--budget", "100"]), 1);
    assert_eq!(code(&["kuznetsov", "<a,b|a^2,b^3,(ab)^5>", "ab", "--budget", "1000000"]), 1);
}

#[test]
fn exhaustion_exits_two() {
    assert_eq!(code(&["consequences", "<a|>", "--word", "a", "--budget", "1000"]), 2);
    assert_eq!(code(&["iso", "<a|a^2>", "<a|>", "--budget", "1000"]), 2);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&["wp", "cyclic:6", "a"]), 64);
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&["wp", "nosuch:1", "a", "--budget", "10"]), 64);
    assert_eq!(code(&["iso", "--marked", "--abstract", "<a|>", "<a|>", "--budget", "10"]), 64);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn input_errors_exit_65_with_position() {
    let out = run(&["wp", "cyclic:6", "a$", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8(out.stderr).unwrap().contains("byte"));
    assert_eq!(code(&["iso", "<a|a^>", "<a|>", "--budget", "10"]), 65);
    assert_eq!(code(&["wp", "perm:(0 0);(1 0)", "a", "--budget", "10"]), 65);
}

#[test]
fn gadgets_follow_the_fleet() {
    assert_eq!(code(&["gadget", "lockhart", "--machine", "halt-3", "--word", "a^3", "--budget", "100"]), 0);
    assert_eq!(code(&["gadget", "lockhart", "--machine", "loop", "--word", "a^3", "--budget", "100"]), 1);
    assert_eq!(code(&["gadget", "trivial-or-z2", "--machine", "halt-5", "--word", "a", "--budget", "100000"]), 0);
    assert_eq!(code(&["gadget", "trivial-or-z2", "--machine", "loop", "--word", "a", "--budget", "5000"]), 2);
}

#[test]
fn mckinsey_and_pickel_certificates() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["mckinsey", "<a|>", "a", "--budget", "10000", "--format", "json"])).unwrap();
    assert_eq!(v["outcome"], "accepted");
    assert!(!v["certificate"].is_null());
    assert_eq!(code(&["pickel", "<a|>", "<a|a^2>", "--budget", "100000"]), 0);
}

#[test]
fn json_reports_are_deterministic() {
    let cases: [&[&str]; 4] = [
        &["extract", "--budget", "1000000", "--relators", "a^6,a^10", "--target", "<a|a^6,a^10>", "--format", "json"],
        &["iso", "--abstract", "<a,b|b>", "<a|>", "--budget", "100000", "--format", "json"],
        &["mckinsey", "<a,b|[a,b]>", "ab", "--budget", "100000", "--format", "json"],
        &["consequences", "<a|>", "--word", "a", "--budget", "1000", "--format", "json"],
    ];
    for args in cases {
        let first = run(args).stdout;
        assert!(!first.is_empty());
        assert_eq!(first, run(args).stdout, "{args:?}");
    }
}

#[test]
fn json_schema_has_the_report_fields() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["wp", "cyclic:6", "a^6", "--budget", "100", "--format", "json"])).unwrap();
    for key in ["command", "inputs", "budget", "outcome", "steps_used", "certificate"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn seed_order_is_fixed() {
    assert_eq!(code(&["wp", "cyclic:2", "a^2", "--budget", "10", "--seed-order", "fixed"]), 0);
    assert_eq!(code(&["wp", "cyclic:2", "a^2", "--budget", "10", "--seed-order", "random"]), 64);
}
