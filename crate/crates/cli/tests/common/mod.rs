#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfcyc"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("run hopfcyc")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Printed values, each rendered in every format: (file stem, arguments).
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut cases = Vec::new();
    let mut add = |stem: String, args: Vec<&str>| {
        for (fmt, ext) in [("text", "txt"), ("json", "json"), ("latex", "tex")] {
            let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            a.extend(["--format".to_string(), fmt.to_string()]);
            cases.push((format!("{stem}.{ext}"), a));
        }
    };
    for n in 1..=3 {
        add(format!("antipode_n{n}"), vec!["compute", "antipode", "--n", &n.to_string()]);
    }
    for n in 1..=4 {
        add(format!("rho_n{n}"), vec!["compute", "rho", "--n", &n.to_string()]);
    }
    for n in 3..=4 {
        add(format!("rho_tilde_n{n}"), vec!["compute", "rho", "--tilde", "--n", &n.to_string()]);
    }
    add("schwarzian".into(), vec!["compute", "rho", "--schwarzian"]);
    add("weil_n1".into(), vec!["compute", "weil", "--n", "1"]);
    cases
}

/// Compare every golden case with the binary's output; returns the mismatching file names.
/// With `HOPFCYC_UPDATE_GOLDEN` set the files are rewritten instead.
pub fn check_golden() -> Vec<String> {
    let update = std::env::var_os("HOPFCYC_UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for (file, args) in golden_cases() {
        let args: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let out = run(&args);
        let again = run(&args);
        let path = golden_dir().join(&file);
        if update {
            std::fs::write(&path, &out.stdout).expect("write golden file");
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_default();
        if !out.status.success() || out.stdout != expected || again.stdout != out.stdout {
            bad.push(file);
        }
    }
    bad
}
