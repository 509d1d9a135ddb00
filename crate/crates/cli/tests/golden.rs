//! Golden reports for the model files under `tests/golden`.
//! Regenerate with `PREORD_BLESS=1 cargo test -p preord-cli --test golden`.

mod common;

use common::{golden_models, implied_exit, render_case, run, schema_errors};
use preord_cli::{parse_model, print_model};

#[test]
fn golden_reports_are_bit_exact() {
    let bless = std::env::var_os("PREORD_BLESS").is_some();
    let models = golden_models();
    assert_eq!(models.len(), 20);
    let mut mismatched = Vec::new();
    for model in &models {
        let got = render_case(model);
        let expected_path = model.with_extension("expected");
        if bless {
            std::fs::write(&expected_path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&expected_path)
            .unwrap_or_else(|_| panic!("missing {}", expected_path.display()));
        if got != want {
            mismatched.push(format!("{}\n--- got\n{got}--- want\n{want}", model.display()));
        }
    }
    assert!(mismatched.is_empty(), "{}", mismatched.join("\n"));
}

#[test]
fn exit_codes_match_report_verdicts() {
    for model in golden_models() {
        let p = model.to_str().unwrap();
        let out = run(&["check", "--no-timing", "--format", "json", p]);
        if out.stdout.is_empty() {
            assert_eq!(out.code, 3, "{p}: no report means a model error");
            assert!(!out.stderr.is_empty(), "{p}");
        } else {
            assert_eq!(out.code, implied_exit(&out.stdout), "{p}");
        }
    }
}

#[test]
fn json_reports_validate() {
    for model in golden_models() {
        let p = model.to_str().unwrap();
        let out = run(&["check", "--format", "json", p]);
        if !out.stdout.is_empty() {
            assert!(out.stdout.ends_with('\n'));
            let errs = schema_errors(&out.stdout);
            assert!(errs.is_empty(), "{p}: {errs:?}");
        }
    }
    let census = run(&["census", "--format", "json", "--limit", "40"]);
    assert!(schema_errors(&census.stdout).is_empty());
    assert_eq!(census.code, implied_exit(&census.stdout));
}

#[test]
fn dump_is_a_print_parse_fixed_point() {
    let dump = run(&["dump"]);
    assert_eq!(dump.code, 0);
    let parsed = parse_model(&dump.stdout).unwrap();
    let printed = print_model(&parsed);
    assert_eq!(printed, dump.stdout);
    assert_eq!(print_model(&parse_model(&printed).unwrap()), printed);

    let dir = std::env::temp_dir().join(format!("preord-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("catalog.model");
    std::fs::write(&file, &dump.stdout).unwrap();
    let v = run(&["validate", file.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(v.code, 0, "{}", v.stdout);
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    for model in golden_models() {
        let p = model.to_str().unwrap();
        let one = run(&["check", "--no-timing", p]);
        let four = run(&["check", "--no-timing", "--parallel", "4", p]);
        assert_eq!(one, four, "{p}");
    }
}
