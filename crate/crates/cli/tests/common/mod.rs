#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn ucc<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ucc"))
        .args(args)
        .output()
        .expect("failed to launch ucc");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Corpus files with the exit code `ucc check` and `ucc entropy` must return.
pub fn golden_corpus() -> Vec<(PathBuf, i32)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "uc"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_str().unwrap();
            let malformed = ["bad_", "wrong_", "duplicate", "empty"]
                .iter()
                .any(|s| name.starts_with(s));
            (p, if malformed { 2 } else { 0 })
        })
        .collect()
}

/// Every command of the golden run: per-file checks plus the generators and
/// analytic commands at small sizes.
pub fn golden_commands() -> Vec<Vec<String>> {
    let mut cmds = Vec::new();
    for (path, code) in golden_corpus() {
        if code != 0 {
            continue;
        }
        let p = path.to_str().unwrap().to_string();
        cmds.push(vec!["check".into(), p.clone()]);
        cmds.push(vec!["entropy".into(), p]);
    }
    let fixed: &[&[&str]] = &[
        &["analytic", "minimize", "--grid", "4096", "--tol", "1e-12"],
        &["analytic", "grid", "--grid", "200"],
        &["analytic", "certify", "--theta", "0.8", "--eta", "1e-3"],
        &["example", "--n", "200", "--samples", "5000", "--seed", "3"],
        &["enumerate", "--n", "3"],
        &["fuzz", "--n", "6", "--count", "300", "--seed", "9"],
    ];
    cmds.extend(
        fixed
            .iter()
            .map(|c| c.iter().map(|s| s.to_string()).collect()),
    );
    cmds
}
