//! One PASS/FAIL line per acceptance criterion, with timings.
//!
//! Criterion 11 cannot pass as stated: b of the printed ψ differs from the printed bψ
//! (see the notes in the appendix fixture). Since `verify all` includes that check,
//! the exit-code half of criterion 12 fails with it. Both are printed as FAIL, and the
//! test pins down exactly which parts fail so that any other regression is caught.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use hopfcyc::formal_calculus::{
    b_cochain, big_b_cochain, normalize, parse_fixture, solve_primitive, verify_appendix, FormalCochain, APPENDIX_FIXTURE,
};
use hopfcyc::hopf_h1::{antipode, delta};
use hopfcyc::enveloping_dual::rho_map;
use hopfcyc_cli::cli::Suite;
use hopfcyc_cli::config::Params;
use hopfcyc_cli::verify::verify;
use hopfcyc_cli::Status;

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(s: Suite, p: Params) -> BTreeMap<String, bool> {
    let r = verify(s, &p);
    assert_ne!(r.status, Status::Usage, "{}", r.summary);
    r.payload["result"]["checks"]
        .as_array()
        .expect("checks")
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"] == "pass"))
        .collect()
}

/// All of `names` present and passing; the detail lists the failures.
fn require(checks: &BTreeMap<String, bool>, names: &[&str]) -> Outcome {
    let failed: Vec<&str> = names.iter().copied().filter(|n| checks.get(*n) != Some(&true)).collect();
    Outcome { passed: failed.is_empty(), detail: if failed.is_empty() { String::new() } else { format!("failed: {}", failed.join(", ")) } }
}

fn within(o: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed <= limit {
        o
    } else {
        Outcome { passed: false, detail: format!("{} over the {} s budget", o.detail, limit.as_secs()) }
    }
}

fn weight(w: u32) -> Params {
    Params { max_weight: Some(w), ..Params::default() }
}

fn c1() -> Outcome {
    let checks = suite(Suite::Hopf, weight(4));
    let mut o = require(&checks, &["hopf/antipode-table", "hopf/antipode-two-routes"]);
    o.detail = format!("S(δ4) = {} {}", antipode(&delta(4)), o.detail);
    o
}

fn c2() -> Outcome {
    let checks = suite(Suite::Duality, weight(1));
    let mut o = require(&checks, &["duality/rho-printed"]);
    for n in 1..=6 {
        if rho_map(&delta(n), false).is_err() || rho_map(&delta(n), true).is_err() {
            o = Outcome { passed: false, detail: format!("ρ(δ{n}) not computable") };
        }
    }
    o
}

fn c3() -> Outcome {
    let checks = suite(Suite::Hopf, Params { max_weight: Some(5), trials: Some(100), ..Params::default() });
    require(&checks, &["hopf/coassociativity", "hopf/counit", "hopf/antipode-axiom", "hopf/bialgebra-products"])
}

fn c4() -> Outcome {
    require(&suite(Suite::Hopf, weight(5)), &["hopf/twisted-antipode"])
}

fn c5() -> Outcome {
    require(&suite(Suite::Duality, weight(5)), &["duality/coproduct-pairing", "duality/gram-nonsingular"])
}

fn c6() -> Outcome {
    let checks = suite(Suite::Action, Params { trials: Some(50), order: Some(8), ..Params::default() });
    require(&checks, &["action/leibniz-x", "action/gamma-multiplier", "action/cocycle", "action/bracket-realization"])
}

fn c7() -> Outcome {
    require(&suite(Suite::Action, Params { trials: Some(20), ..Params::default() }), &["action/expansional"])
}

fn c8() -> Outcome {
    let checks = suite(Suite::MatchedPair, Params::default());
    let mut names: Vec<&str> = checks.keys().map(|s| s.as_str()).collect();
    for n in ["matched-pair/axioms/s3-group", "matched-pair/axioms/s3-functions", "matched-pair/axioms/s3", "matched-pair/axioms/f21", "matched-pair/lemma1", "matched-pair/lemma2", "matched-pair/kernel-theta-t"] {
        names.push(n);
    }
    require(&checks, &names)
}

fn c9() -> Outcome {
    let checks = suite(Suite::Cyclic, Params { n: Some(3), trials: Some(100), max_weight: Some(3), ..Params::default() });
    let names: Vec<&str> = checks.keys().map(|s| s.as_str()).collect();
    let mut o = require(&checks, &names);
    if checks.len() < 7 {
        o = Outcome { passed: false, detail: "missing cyclic checks".into() };
    }
    o
}

fn c10() -> Outcome {
    require(
        &suite(Suite::Cohomology, Params::default()),
        &["cohomology/wo1-godbillon-vey", "cohomology/pontryagin-classes", "cohomology/affine-modular"],
    )
}

/// `(b(ψ) - bψ, B(ψ))`, both normalized.
fn residues(psi: &FormalCochain, bpsi: &FormalCochain) -> (FormalCochain, FormalCochain) {
    let b = b_cochain(psi).unwrap().add(&normalize(bpsi).unwrap().scale(&hopfcyc::int(-1))).unwrap();
    (normalize(&b).unwrap(), big_b_cochain(psi).unwrap())
}

/// Flip the sign of each coefficient in turn; returns how many flips leave the residues unchanged.
fn undetected_flips(psi: &FormalCochain, bpsi: &FormalCochain) -> usize {
    let base = residues(psi, bpsi);
    let mut missed = 0;
    for flip_psi in [true, false] {
        let c = if flip_psi { psi } else { bpsi };
        for (pattern, k) in c.terms().iter() {
            let mut flipped = c.clone();
            flipped.add_term(pattern.clone(), -(k.clone() + k.clone())).unwrap();
            let r = if flip_psi { residues(&flipped, bpsi) } else { residues(psi, &flipped) };
            if r == base {
                missed += 1;
            }
        }
    }
    missed
}

/// (b-half, B-half, mutations detected).
fn c11_parts() -> (bool, bool, bool) {
    let fixture = parse_fixture(APPENDIX_FIXTURE).unwrap();
    let report = verify_appendix(&fixture).unwrap();
    let psi = fixture.section("psi").unwrap();
    let bpsi = fixture.section("bpsi").unwrap();
    let primitive = solve_primitive(bpsi).unwrap().expect("printed bψ has a primitive");
    let consistent = residues(&primitive, bpsi);
    assert!(consistent.0.is_zero() && consistent.1.is_zero());
    let mutations = undetected_flips(psi, bpsi) == 0 && undetected_flips(&primitive, bpsi) == 0;
    (report.b_matches(), report.big_b_vanishes(), mutations)
}

fn c11() -> Outcome {
    let (b, big_b, mutations) = c11_parts();
    Outcome {
        passed: b && big_b && mutations,
        detail: format!(
            "b(ψ) = printed bψ: {}; B(ψ) = 0: {}; sign mutations detected: {}",
            yes(b),
            yes(big_b),
            yes(mutations)
        ),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// (golden files stable, `verify all` exit code, failing checks of `verify all`).
fn c12_parts() -> (bool, Option<i32>, Vec<String>, Duration) {
    let golden = common::check_golden().is_empty();
    let start = Instant::now();
    let out = common::run(&["verify", "all", "--format", "json"]);
    let elapsed = start.elapsed();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
    let failing = v["result"]["checks"]
        .as_array()
        .map(|cs| cs.iter().filter(|c| c["status"] != "pass").map(|c| c["name"].as_str().unwrap().to_string()).collect())
        .unwrap_or_default();
    (golden, out.status.code(), failing, elapsed)
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>, Duration)> = vec![
        ("antipode table and S(δ4) by two routes", Box::new(c1), secs(1)),
        ("printed ρ values and the Schwarzian", Box::new(c2), secs(5)),
        ("Hopf axioms of H(1) up to weight 5", Box::new(c3), secs(60)),
        ("S̃ is an involution", Box::new(c4), secs(60)),
        ("duality and nonsingular Gram matrices", Box::new(c5), secs(60)),
        ("action identities on jets", Box::new(c6), secs(30)),
        ("expansional identity", Box::new(c7), secs(60)),
        ("matched pairs", Box::new(c8), secs(120)),
        ("cyclic module relations and bicomplex", Box::new(c9), secs(300)),
        ("Weil and Chevalley-Eilenberg cohomology", Box::new(c10), secs(30)),
        ("appendix identities", Box::new(c11), secs(10)),
    ];
    let mut results = Vec::new();
    for (i, (label, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let elapsed = start.elapsed();
        let o = within(o, elapsed, *limit);
        println!("criterion {:>2}: {} {label} ({:.2} s) {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, elapsed.as_secs_f64(), o.detail);
        results.push(o.passed);
    }
    let start = Instant::now();
    let (golden, code, failing, all_time) = c12_parts();
    let ok12 = golden && code == Some(0) && all_time < secs(300);
    println!(
        "criterion 12: {} CLI golden files and verify all ({:.2} s) golden stable: {}; verify all exit {:?} in {:.1} s; failing: {:?}",
        if ok12 { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        yes(golden),
        code,
        all_time.as_secs_f64(),
        failing
    );

    for (i, passed) in results.iter().enumerate().take(10) {
        assert!(passed, "criterion {} failed", i + 1);
    }
    // criterion 11: everything except the b-half holds
    let (b, big_b, mutations) = c11_parts();
    assert!(!b && big_b && mutations, "criterion 11 changed: b {b}, B {big_b}, mutations {mutations}");
    // criterion 12: golden files and the time budget hold; the only failing check is the appendix b-half
    assert!(golden, "golden files differ");
    assert!(all_time < secs(300), "verify all took {all_time:?}");
    assert_eq!(code, Some(1));
    assert_eq!(failing, vec!["appendix/b-psi".to_string()]);
}
