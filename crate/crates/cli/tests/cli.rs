mod common;

use common::run;
use hopfcyc::formal_calculus::{parse_fixture, solve_primitive, write_fixture, APPENDIX_FIXTURE};
use serde_json::Value;
use std::io::Write;

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap_or(Value::Null))
}

#[test]
fn compute_examples() {
    let o = run(&["compute", "rho", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "ρ(δ1) = x1\n");
    let o = run(&["compute", "antipode", "--n", "3", "--format", "latex"]);
    assert_eq!(stdout(&o), "-\\delta_{3} + 4\\delta_{1}\\delta_{2} - 2\\delta_{1}^{3}\n");
    let (code, v) = json(&["compute", "weil", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["betti"], serde_json::json!([1, 0, 0, 1]));
    assert_eq!(v["schema"], "hopfcyc/1");
}

#[test]
fn coproduct_and_twisted_antipode() {
    let (_, v) = json(&["compute", "coproduct", "--n", "2"]);
    let terms = v["result"]["value"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms.iter().any(|t| t["monomial"] == serde_json::json!([{"d1": 1}, {"d1": 1}])));
    let o = run(&["compute", "antipode", "--n", "2", "--tilde"]);
    assert_eq!(stdout(&o), "S̃(δ2) = -δ2 + δ1^2\n");
}

#[test]
fn delta_coordinates_of_a_jet() {
    // ψ = x + x²: log ψ' = log(1 + 2x) = 2x − 2x² + 8x³/3 − …, δn = n!·[xⁿ]
    let (code, v) = json(&["compute", "delta-coords", "--jet", "1,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], serde_json::json!([[2, 1], [-4, 1], [16, 1], [-96, 1]]));
    assert_eq!(run(&["compute", "delta-coords", "--jet", "1,x"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "delta-coords", "--jet", "1", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn chevalley_eilenberg() {
    let (_, v) = json(&["compute", "ce", "--algebra", "affine", "--coefficients", "character"]);
    assert_eq!(v["result"]["betti"], serde_json::json!([0, 1, 1]));
    assert_eq!(v["result"]["cycles"][2], serde_json::json!(["1·X∧Y"]));
    let (_, v) = json(&["compute", "ce", "--algebra", "abelian:2"]);
    assert_eq!(v["result"]["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(run(&["compute", "ce", "--algebra", "witt:3..1"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "ce", "--algebra", "sl2"]).status.code(), Some(2));
}

#[test]
fn bicrossed_from_builtin_and_file() {
    let (code, v) = json(&["compute", "bicrossed", "--group", "s3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 6);
    assert_eq!(v["result"]["axioms"], "pass");
    // C₆ as a table, factored as C₃·C₂
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# Z/6").unwrap();
    for i in 0..6 {
        let row: Vec<String> = (0..6).map(|j| ((i + j) % 6).to_string()).collect();
        writeln!(f, "{}", row.join(" ")).unwrap();
    }
    let path = f.path().to_str().unwrap();
    let (code, v) = json(&["compute", "bicrossed", "--group-file", path, "--g1", "0,2,4", "--g2", "0,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["group_order"], 6);
    let (code, _) = json(&["compute", "bicrossed", "--group-file", path, "--g1", "0,2,4", "--g2", "0,2"]);
    assert_eq!(code, 2, "not an exact factorization");
    let (code, v) = json(&["compute", "bicrossed", "--group-file", path]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["g2"], serde_json::json!([0]));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["compute", "antipode"],
        vec!["compute", "antipode", "--n", "0"],
        vec!["compute", "rho", "--n", "40"],
        vec!["compute", "weil", "--n", "5"],
        vec!["compute", "bicrossed", "--group", "a5"],
        vec!["compute", "ce", "--format", "latex"],
        vec!["compute", "nonsense"],
        vec!["verify", "nonsense"],
        vec!["verify", "cyclic", "--n", "9"],
        vec!["verify", "action", "--order", "3"],
        vec!["verify", "appendix", "--fixture", "/nonexistent/fixture"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_small_suites() {
    let o = run(&["verify", "hopf", "--max-weight", "0"]);
    assert!(o.status.success());
    let (code, v) = json(&["verify", "cyclic", "--n", "3", "--trials", "25", "--seed", "7"]);
    assert_eq!(code, 0);
    let checks = v["result"]["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = json(&["verify", "action", "--trials", "5", "--seed", "3"]).1;
    let b = json(&["verify", "action", "--trials", "5", "--seed", "3"]).1;
    assert_eq!(a, b);
    assert_eq!(a["result"]["params"]["seed"], 3);
}

#[test]
fn config_file_supplies_defaults() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# defaults\nseed = 11\ntrials = 4\nmax-weight = 2").unwrap();
    let path = f.path().to_str().unwrap();
    let (code, v) = json(&["verify", "hopf", "--config", path]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["params"]["seed"], 11);
    let bialg = v["result"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "hopf/bialgebra-products").unwrap();
    assert_eq!(bialg["cases"], 4);
    // flags win over the file
    let (_, v) = json(&["verify", "hopf", "--config", path, "--seed", "5"]);
    assert_eq!(v["result"]["params"]["seed"], 5);
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = blue").unwrap();
    assert_eq!(run(&["verify", "hopf", "--config", bad.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn appendix_with_the_printed_fixture_names_the_differences() {
    let o = run(&["verify", "appendix"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL appendix/b-psi"));
    assert!(text.contains("PASS appendix/big-b-psi"));
    assert!(text.contains("24 pattern(s) differ"));
    assert!(text.contains("violated: b(ψ) equals the printed bψ pattern by pattern"));
}

#[test]
fn appendix_with_a_consistent_fixture_passes() {
    let printed = parse_fixture(APPENDIX_FIXTURE).unwrap();
    let bpsi = printed.section("bpsi").unwrap().clone();
    let psi = solve_primitive(&bpsi).unwrap().unwrap();
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(write_fixture(&[("psi", &psi), ("bpsi", &bpsi)]).as_bytes()).unwrap();
    let o = run(&["verify", "appendix", "--fixture", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("b(psi) == printed bpsi; B(psi) == 0"));
}
