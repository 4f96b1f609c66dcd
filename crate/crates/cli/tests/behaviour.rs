use std::process::Command;

fn confdirac() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_confdirac"));
    cmd.current_dir(env!("CARGO_MANIFEST_DIR")).env_remove("CONFDIRAC_FORMAT");
    cmd
}

fn stdout(cmd: &mut Command) -> String {
    let out = cmd.output().unwrap();
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn default_format_is_a_table() {
    let out = stdout(confdirac().args(["derive-power", "--n", "3", "--J", "3/2", "--N", "1"]));
    assert!(out.starts_with("derive-power "));
    assert!(out.contains("obstruction: D^3 - D"));
}

#[test]
fn environment_selects_the_default_format() {
    let out = stdout(confdirac().env("CONFDIRAC_FORMAT", "json").args(["membership", "--N", "1"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "membership");
    let out = stdout(
        confdirac()
            .env("CONFDIRAC_FORMAT", "json")
            .args(["--format", "table", "membership", "--N", "1"]),
    );
    assert!(out.starts_with("membership N=1"));
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["--format", "json", "sphere", "--n", "6", "--N", "4", "--kmax", "3"];
    let strip = |s: String| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = stdout(confdirac().args(args));
    let b = stdout(confdirac().args(args));
    assert_eq!(strip(a), strip(b));
}

#[test]
fn numbers_are_exact_strings() {
    let out = stdout(confdirac().args(["--format", "json", "sphere", "--n", "3", "--N", "1", "--kmax", "0"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["lines"][0]["image"], "15/8");
    assert_eq!(v["payload"]["lines"][1]["eigenvalue"], "-3/2");
    assert!(!out.contains('.'), "no decimal points in exact output");
}

#[test]
fn malformed_spectrum_reports_line_and_column() {
    let out = confdirac()
        .args(["sphere", "--n", "3", "--N", "1", "--spectrum", "tests/fixtures/malformed.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column 3"), "{err}");
}

#[test]
fn flag_errors_print_usage() {
    let out = confdirac().args(["qtilde", "--n", "2", "--k", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("must be at least 3"));
    assert!(err.contains("Usage:"));
}

#[test]
fn injected_fault_carries_a_counterexample() {
    let out = confdirac()
        .args(["--format", "json", "verify-all", "--inject-fault", "sign-flip"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&serde_json::Value> =
        v["verdicts"].as_array().unwrap().iter().filter(|x| x["ok"] == false).collect();
    assert_eq!(failed.len(), 1);
    let cx = &failed[0]["counterexample"];
    assert_eq!(cx["params"]["family"], "spinor");
    assert_ne!(cx["lhs"], cx["rhs"]);
}

#[test]
fn full_profile_passes() {
    let out = confdirac().args(["--format", "json", "verify-all", "--profile", "full"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
