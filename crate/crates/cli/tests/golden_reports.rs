//! Black-box runs of the pinned cases in `tests/golden/cases.txt`.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the reports after an intended change.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Case {
    name: String,
    exit: i32,
    args: Vec<String>,
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(crate_dir().join("tests/golden/cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            Case {
                name: it.next().unwrap().to_string(),
                exit: it.next().unwrap().parse().unwrap(),
                args: it.map(str::to_string).collect(),
            }
        })
        .collect()
}

fn run(args: &[String]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_confdirac"))
        .current_dir(crate_dir())
        .env_remove("CONFDIRAC_FORMAT")
        .arg("--format")
        .arg("json")
        .args(args)
        .output()
        .unwrap()
}

/// The report without its timing field, pretty-printed.
fn canonical(stdout: &[u8]) -> String {
    let mut v: Value = serde_json::from_slice(stdout).expect("stdout is one JSON document");
    v.as_object_mut().unwrap().remove("elapsed_ms").expect("elapsed_ms present");
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.json"))
}

#[test]
fn every_case_matches_exit_code_and_report() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let out = run(&case.args);
        let code = out.status.code().unwrap_or(-1);
        if code != case.exit {
            failures.push(format!(
                "{}: exit {code}, expected {}\n{}",
                case.name,
                case.exit,
                String::from_utf8_lossy(&out.stderr)
            ));
            continue;
        }
        if case.exit >= 2 {
            if !out.stdout.is_empty() {
                failures.push(format!("{}: wrote to stdout on a flag or input error", case.name));
            }
            continue;
        }
        let got = canonical(&out.stdout);
        let path = golden_path(&case.name);
        if update {
            std::fs::write(&path, &got).unwrap();
        } else {
            let want = std::fs::read_to_string(&path).unwrap_or_default();
            if got != want {
                failures.push(format!("{}: report differs from {}", case.name, path.display()));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_subcommand_has_three_pinned_cases() {
    let cases = cases();
    for sub in ["qtilde", "derive-power", "sphere", "verify-all", "holographic", "membership", "dual-hahn", "variation"] {
        let pinned = cases.iter().filter(|c| c.exit <= 1 && c.args[0] == sub).count();
        assert!(pinned >= 3, "{sub} has {pinned} pinned cases");
    }
}

#[test]
fn golden_reports_have_no_orphans() {
    let names: Vec<String> = cases().into_iter().filter(|c| c.exit <= 1).map(|c| c.name).collect();
    for entry in std::fs::read_dir(crate_dir().join("tests/golden")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            let stem = path.file_stem().unwrap().to_str().unwrap().to_string();
            assert!(names.contains(&stem), "{} has no case", Path::new(&path).display());
        }
    }
}
