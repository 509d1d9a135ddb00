#![allow(dead_code)]

use std::path::{Path, PathBuf};

use preord_cli::commands::{run_command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Model files of the golden suite, in name order.
pub fn golden_models() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .expect("golden directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "model"))
        .collect();
    v.sort();
    v
}

pub fn run(args: &[&str]) -> Output {
    let mut argv = vec!["preord"];
    argv.extend_from_slice(args);
    run_command(argv)
}

/// Load errors are prefixed with the path, which differs between machines.
fn strip_path(stderr: &str, path: &Path) -> String {
    let prefix = format!("{}: ", path.display());
    stderr.lines().map(|l| l.strip_prefix(&prefix).unwrap_or(l)).collect::<Vec<_>>().join("\n")
}

/// The expected-file rendering: exit code, text report, JSON report, stderr.
pub fn render_case(path: &Path) -> String {
    let p = path.to_str().unwrap();
    let text = run(&["check", "--no-timing", p]);
    let json = run(&["check", "--no-timing", "--format", "json", p]);
    assert_eq!(text.code, json.code, "{p}: formats disagree on the exit code");
    format!(
        "exit {}\n--- text\n{}--- json\n{}--- stderr\n{}\n",
        text.code,
        text.stdout,
        json.stdout,
        strip_path(&text.stderr, path)
    )
}

/// Exit code implied by a JSON report: error > fails > unknown > holds.
pub fn implied_exit(json: &str) -> i32 {
    let v: serde_json::Value = serde_json::from_str(json).expect("report is JSON");
    let verdicts: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verdict"].as_str().unwrap())
        .collect();
    if verdicts.contains(&"error") {
        3
    } else if verdicts.contains(&"fails") {
        1
    } else if verdicts.contains(&"unknown") {
        2
    } else {
        0
    }
}

/// Schema violations of a JSON report, rendered.
pub fn schema_errors(json: &str) -> Vec<String> {
    let schema_text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json"))
        .expect("schema file");
    let schema: serde_json::Value = serde_json::from_str(&schema_text).expect("schema is JSON");
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let instance: serde_json::Value = match serde_json::from_str(json) {
        Ok(v) => v,
        Err(e) => return vec![format!("not JSON: {e}")],
    };
    let out = match compiled.validate(&instance) {
        Ok(()) => Vec::new(),
        Err(errs) => errs.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    out
}
