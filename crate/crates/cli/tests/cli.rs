mod common;

use common::{golden_commands, golden_corpus, golden_dir, ucc};
use serde_json::Value;

#[test]
fn exit_codes_on_golden_corpus() {
    for (path, expected) in golden_corpus() {
        for verb in ["check", "entropy"] {
            let run = ucc(&[verb.as_ref(), path.as_os_str()]);
            assert_eq!(
                run.code,
                expected,
                "{verb} {}: {}",
                path.display(),
                run.stderr
            );
            if expected == 2 {
                assert!(run.stderr.starts_with("error:"), "{}", run.stderr);
            }
        }
    }
}

#[test]
fn union_closed_file_reports_zero_epsilon() {
    let run = ucc(&["check", golden_dir().join("power3.uc").to_str().unwrap()]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["epsilon"]["num"], 0);
    assert_eq!(v["epsilon"]["den"], 64);
    assert_eq!(v["theorem"]["applicable"], true);
}

#[test]
fn non_closed_file_reports_epsilon() {
    let run = ucc(&[
        "entropy",
        golden_dir().join("three_sets.uc").to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["epsilon"]["num"], 2);
    assert_eq!(v["epsilon"]["den"], 9);
    // δ exceeds ψ, so the frequency bound says nothing here.
    assert_eq!(v["theorem"]["applicable"], false);
    assert_eq!(v["lower_bound"]["satisfied"], true);
    assert_eq!(v["chain_rule"]["identity_holds"], true);
}

#[test]
fn singleton_family_is_inapplicable_not_an_error() {
    let run = ucc(&["check", golden_dir().join("singleton.uc").to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["theorem"]["applicable"], false);
    assert!(v["delta"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["check"],
        &["check", "/definitely/not/here.uc"],
        &["example", "--n", "20"],
        &["example", "--n", "100", "--k", "60", "--m", "50"],
        &["enumerate", "--n", "5"],
        &["fuzz", "--n", "0", "--count", "3"],
        &["analytic", "minimize", "--grid", "10"],
        &["analytic", "certify", "--eta", "0.5"],
        &["analytic", "minimize", "--tol", "-1"],
        &["check", "x.uc", "--format", "yaml"],
    ];
    for args in cases {
        let run = ucc(args);
        assert_eq!(run.code, 2, "{args:?}: {}", run.stderr);
    }
}

#[test]
fn degenerate_example_names_the_parameters() {
    let run = ucc(&["example", "--n", "20"]);
    assert_eq!(run.code, 2);
    assert!(
        run.stderr.contains("k=15") && run.stderr.contains("m=13"),
        "{}",
        run.stderr
    );
}

#[test]
fn explicit_example_matches_golden_file() {
    let run = ucc(&["example", "--n", "10", "--k", "3", "--m", "7", "--explicit"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let golden = std::fs::read_to_string(golden_dir().join("example10.uc")).unwrap();
    assert_eq!(run.stdout, golden);
}

#[test]
fn certificate_is_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.json");
    let run = ucc(&[
        "analytic",
        "certify",
        "--theta",
        "0.8",
        "--eta",
        "1e-2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let file = std::fs::read_to_string(&out).unwrap();
    assert_eq!(file, run.stdout);
    let v: Value = serde_json::from_str(&file).unwrap();
    assert_eq!(v["verified"], true);
    assert!(v["limitation"].as_str().unwrap().contains("sampl"));
}

#[test]
fn refuting_above_the_minimum_is_not_a_violation() {
    let run = ucc(&["analytic", "certify", "--theta", "0.81", "--eta", "1e-2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["verified"], false);
    assert_eq!(v["outcome"], "refuted");
}

#[test]
fn human_and_csv_formats_render() {
    let file = golden_dir().join("power2.uc");
    let human = ucc(&["check", file.to_str().unwrap(), "--format", "human"]);
    assert_eq!(human.code, 0);
    assert!(human.stdout.contains("epsilon.num: 0\n"));
    let csv = ucc(&["check", file.to_str().unwrap(), "--format", "csv"]);
    assert!(csv.stdout.starts_with("key,value\n"));
    assert!(csv.stdout.contains("\nepsilon.den,16\n"));
    let grid = ucc(&["analytic", "grid", "--grid", "100", "--format", "csv"]);
    assert_eq!(grid.code, 0);
    assert!(grid.stdout.starts_with("x,y,f,margin\n"));
    assert_eq!(grid.stdout.lines().count(), 1 + 100 * 100);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in golden_commands().iter().take(6) {
        let a = ucc(args);
        let b = ucc(args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
