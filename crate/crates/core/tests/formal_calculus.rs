mod common;

use common::rng;
use hopfcyc::algebra_kernel::{int, rat, Rational};
use hopfcyc::formal_calculus::*;
use hopfcyc::formal_diffeo::{hopf_act, random_crossed, CrossedElement};
use hopfcyc::hopf_h1::{delta, h_y};

fn pat(s: &str) -> Pattern {
    Pattern(s.split('|').map(|w| DerivWord::parse(w).unwrap()).collect())
}

fn cochain(arity: usize, terms: &[(Rational, &str)]) -> FormalCochain {
    FormalCochain::from_terms(arity, terms.iter().map(|(c, p)| (pat(p), c.clone())).collect()).unwrap()
}

#[test]
fn words_and_patterns() {
    assert_eq!(DerivWord::parse("sua").unwrap(), DerivWord::new(true, 1, 1));
    assert_eq!(DerivWord::parse("").unwrap(), DerivWord::EMPTY);
    assert_eq!(DerivWord::parse("uu"), Err(FormalError::TwoUMarkers));
    assert_eq!(DerivWord::parse("ax"), Err(FormalError::BadLetter('x')));
    assert_eq!(pat("|us|a|s").paper_notation(), "(us,a,s)");
    let mut c = FormalCochain::zero(3);
    assert_eq!(c.add_term(pat("|u|u"), int(1)), Err(FormalError::TwoUMarkers));
    assert_eq!(c.add_term(pat("|u"), int(1)), Err(FormalError::ArityMismatch(3, 2)));
}

#[test]
fn normalize_examples() {
    // τ(∂_s(a⁰) a¹) = −τ(a⁰a¹) − τ(a⁰ ∂_s a¹)
    let c = cochain(2, &[(int(1), "s|")]);
    assert_eq!(normalize(&c).unwrap(), cochain(2, &[(int(-1), "|"), (int(-1), "|s")]));
    let c = cochain(3, &[(int(1), "a||s")]);
    assert_eq!(normalize(&c).unwrap(), cochain(3, &[(int(-1), "|a|s"), (int(-1), "||as")]));
    let c = cochain(2, &[(int(1), "u|a")]);
    assert_eq!(normalize(&c).unwrap(), cochain(2, &[(int(-1), "|ua")]));
    // τ(δ₁∂_s(a⁰) a¹) = −τ(∂_s a⁰ δ₁a¹) = τ(a⁰ δ₁a¹) + τ(a⁰ ∂_sδ₁a¹) and ∂_sδ₁ = δ₁∂_s − δ₁
    let c = cochain(2, &[(int(1), "us|")]);
    assert_eq!(normalize(&c).unwrap(), cochain(2, &[(int(1), "|us")]));
    let canonical = cochain(4, &[(rat(1, 3), "|us|a|s"), (int(-2), "|a||u")]);
    assert_eq!(normalize(&canonical).unwrap(), canonical);
    assert!(normalize(&FormalCochain::zero(3)).unwrap().is_zero());
}

#[test]
fn normalization_is_confluent() {
    let mut r = rng(11);
    for i in 0..200 {
        let arity = 1 + i % 4;
        let mut c = random_cochain(&mut r, arity, 4, 2);
        if i % 3 == 0 {
            c = c.add(&random_cochain(&mut r, arity, 2, 3)).unwrap();
        }
        let reference = normalize(&c).unwrap();
        assert!(reference.is_normalized());
        for _ in 0..3 {
            assert_eq!(normalize_random(&c, &mut r).unwrap(), reference);
        }
    }
}

#[test]
fn b_examples() {
    assert!(b_cochain(&FormalCochain::zero(3)).unwrap().is_zero());
    // the four faces of (α, s) cancel in pairs
    assert!(b_cochain(&cochain(3, &[(int(1), "|a|s")])).unwrap().is_zero());
    assert_eq!(b_cochain(&cochain(3, &[(int(1), "|aa|s")])).unwrap(), cochain(4, &[(int(-2), "|a|a|s")]));
    assert_eq!(
        b_cochain(&cochain(3, &[(int(1), "|u|as")])).unwrap(),
        cochain(4, &[(int(1), "|u|a|s"), (int(1), "|u|s|a")])
    );
    // b(τ)(a⁰, a¹) = τ(a⁰a¹) − τ(a¹a⁰) = 0
    assert!(b_cochain(&cochain(1, &[(int(1), "")])).unwrap().is_zero());
    // b(φ)(a⁰, a¹) with φ = τ(∂_s ·): −τ(a⁰a¹) − τ(a⁰∂_s a¹) − τ(∂_s a⁰ · a¹) + ... after normalization
    let phi = cochain(1, &[(int(1), "s")]);
    assert_eq!(normalize(&phi).unwrap(), cochain(1, &[(int(-1), "")]));
}

#[test]
fn big_b_examples() {
    assert!(big_b_cochain(&cochain(1, &[(int(1), "")])).unwrap().is_zero());
    // B(τ(a⁰ a¹)) = 2 τ(a⁰) after antisymmetrization
    let c = cochain(2, &[(int(1), "|")]);
    assert_eq!(big_b_cochain(&c).unwrap(), cochain(1, &[(int(2), "")]));
    // B(τ(a⁰ ∂_s a¹)): B₀ gives τ(∂_s a⁰) = −τ(a⁰), and λ is the identity on 1-slot cochains
    let c = cochain(2, &[(int(1), "|s")]);
    assert_eq!(big_b_cochain(&c).unwrap(), cochain(1, &[(int(-1), "")]));
    // B is not identically zero on the appendix patterns: the three-letter ones survive
    assert!(big_b_cochain(&cochain(3, &[(int(1), "|aaa|u")])).unwrap().is_zero());
    assert_eq!(big_b_cochain(&cochain(3, &[(int(1), "|ua|s")])).unwrap(), cochain(2, &[(int(2), "|uas")]));
}

#[test]
fn bicomplex_identities_on_random_cochains() {
    let mut r = rng(5);
    for i in 0..60 {
        let arity = 1 + i % 4;
        let c = random_cochain(&mut r, arity, 3, 2);
        let b = b_cochain(&c).unwrap();
        assert!(b_cochain(&b).unwrap().is_zero(), "b² on {c}");
        let bb = big_b_cochain(&c).unwrap();
        assert!(big_b_cochain(&bb).unwrap().is_zero(), "B² on {c}");
        if arity >= 2 {
            let lhs = b_cochain(&bb).unwrap().add(&big_b_cochain(&b).unwrap()).unwrap();
            assert!(lhs.is_zero(), "bB + Bb on {c}: {lhs}");
        }
    }
}

fn crossed_sub(a: &CrossedElement, b: &CrossedElement) -> CrossedElement {
    a.add(&b.scale(&int(-1))).unwrap()
}

#[test]
fn derivation_rules_hold_in_the_jet_model() {
    // ∂_s = −Y on the crossed product; [∂_s, δ₁] = −δ₁ is [Y, δ₁] = δ₁
    let mut r = rng(77);
    let act = |h: &hopfcyc::hopf_h1::HElement, u: &CrossedElement| hopf_act(h, u).unwrap();
    for _ in 0..30 {
        let a = random_crossed(&mut r, 8, 2);
        let b = random_crossed(&mut r, 8, 2);
        let comm = crossed_sub(&act(&h_y(), &act(&delta(1), &a)), &act(&delta(1), &act(&h_y(), &a)));
        assert!(comm.agrees(&act(&delta(1), &a)));
        let ab = a.mul(&b).unwrap();
        for h in [delta(1), h_y()] {
            let rhs = act(&h, &a).mul(&b).unwrap().add(&a.mul(&act(&h, &b)).unwrap()).unwrap();
            assert!(act(&h, &ab).agrees(&rhs), "Leibniz for {h}");
        }
    }
}

#[test]
fn fixture_parsing() {
    let fx = parse_fixture("# comment\n[psi]\n 1/8 ; | a | su   # trailing\n-2 ; | u | \n").unwrap();
    let psi = fx.section("psi").unwrap();
    assert_eq!(psi.coeff(&pat("|a|su")), rat(1, 8));
    assert_eq!(psi.coeff(&pat("|u|")), int(-2));
    let err = |t: &str| parse_fixture(t).unwrap_err();
    assert!(matches!(err("1 ; | a"), FormalError::Parse { line: 1, .. }));
    assert!(matches!(err("[psi]\n\n1/x ; | a"), FormalError::Parse { line: 3, .. }));
    assert!(matches!(err("[psi]\n1 ; | a | b"), FormalError::Parse { line: 2, .. }));
    assert!(matches!(err("[psi]\n1 ; | a\n1 ; | a | s"), FormalError::Parse { line: 3, .. }));
    assert!(matches!(err("[psi]\n1 ; | u | u"), FormalError::Parse { line: 2, .. }));
    assert!(matches!(err("[psi\n"), FormalError::Parse { line: 1, .. }));
    assert!(matches!(err("[psi]\n1 | a"), FormalError::Parse { line: 2, .. }));
}

#[test]
fn empty_fixture_is_trivially_equal() {
    let report = verify_appendix(&parse_fixture("").unwrap()).unwrap();
    assert!(report.passed());
    assert_eq!(report.to_string(), "b(psi) == printed bpsi; B(psi) == 0");
}

#[test]
fn appendix_fixture() {
    let fx = parse_fixture(APPENDIX_FIXTURE).unwrap();
    assert_eq!(fx.section("psi").unwrap().terms().len(), 13);
    assert_eq!(fx.section("bpsi").unwrap().terms().len(), 26);
    let report = verify_appendix(&fx).unwrap();
    println!("{report}");
    assert!(report.big_b_vanishes());
    assert!(report.bpsi_closed);
    let primitive = report.primitive.clone().expect("printed bψ is b-exact");
    assert_eq!(b_cochain(&primitive).unwrap(), normalize(fx.section("bpsi").unwrap()).unwrap());
    assert!(big_b_cochain(&primitive).unwrap().is_zero());
    // the printed ψ is not a primitive of the printed bψ
    assert!(!report.b_matches());
    assert_eq!(report.b_diffs.len(), 24);
}

#[test]
fn appendix_block_diagnostics() {
    // {u, α, s}: b of the printed 1/8 group matches once the two terms with u in the
    // first slot change sign
    let fx = parse_fixture(APPENDIX_FIXTURE).unwrap();
    let bpsi = fx.section("bpsi").unwrap();
    let block = |c: &FormalCochain, want: (bool, u32, u32)| {
        FormalCochain::from_terms(
            c.arity(),
            c.terms().iter().filter(|(p, _)| content(p) == want).map(|(p, k)| (p.clone(), k.clone())).collect(),
        )
        .unwrap()
    };
    let printed = cochain(3, &[(rat(1, 8), "|a|su"), (rat(-1, 8), "|au|s"), (rat(-1, 8), "|s|au"), (rat(1, 8), "|su|a")]);
    let flipped = cochain(3, &[(rat(1, 8), "|a|su"), (rat(1, 8), "|au|s"), (rat(-1, 8), "|s|au"), (rat(-1, 8), "|su|a")]);
    let target = block(bpsi, (true, 1, 1));
    assert_ne!(b_cochain(&printed).unwrap(), target);
    assert_eq!(b_cochain(&flipped).unwrap(), target);
    // T3 read outside the 1/2 group leaves bψ not closed
    let mut outside = bpsi.clone();
    for p in ["|u|as|s", "|s|ua|s", "|s|as|u"] {
        outside.add_term(pat(p), rat(-1, 2)).unwrap();
    }
    assert!(!b_cochain(&outside).unwrap().is_zero());
}

fn passing_fixture_text() -> String {
    let fx = parse_fixture(APPENDIX_FIXTURE).unwrap();
    let report = verify_appendix(&fx).unwrap();
    let psi = report.primitive.unwrap();
    write_fixture(&[("psi", &psi), ("bpsi", fx.section("bpsi").unwrap())])
}

#[test]
fn consistent_fixture_passes_and_mutations_are_detected() {
    let text = passing_fixture_text();
    let report = verify_appendix(&parse_fixture(&text).unwrap()).unwrap();
    assert!(report.passed(), "{report}");
    let lines: Vec<&str> = text.lines().collect();
    let mut section = "";
    for (i, line) in lines.iter().enumerate() {
        if line.starts_with('[') {
            section = line;
            continue;
        }
        let Some((coeff, words)) = line.split_once(';') else { continue };
        let mut mutated = lines.clone();
        let flipped = format!("{} ;{}", -coeff.trim().parse::<Rational>().unwrap(), words);
        mutated[i] = &flipped;
        let report = verify_appendix(&parse_fixture(&mutated.join("\n")).unwrap()).unwrap();
        assert!(!report.passed(), "mutation of line {} undetected", i + 1);
        if section == "[bpsi]" {
            let p = pat(words);
            assert!(report.b_diffs.iter().any(|d| d.pattern == p));
            assert!(report.to_string().contains(&p.paper_notation()));
        }
    }
}
