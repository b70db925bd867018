mod common;

use common::rng;
use hopfcyc::algebra_kernel::{int, CommPoly, Exponents, Rational, TruncSeries};
use hopfcyc::formal_diffeo::*;
use hopfcyc::hopf_h1::{coproduct, delta, h_pow, h_x, h_y, normal_product, random_element, HElement};
use hopfcyc::rat;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

const N: usize = 8;

fn jet(c: &[i64], order: usize) -> DiffeoJet {
    DiffeoJet::from_higher(&c.iter().map(|&v| int(v)).collect::<Vec<_>>(), order)
}

/// Compositional inverse by Lagrange inversion: `[x^n] ψ⁻¹ = (1/n) [w^{n−1}] (w/ψ(w))^n`.
fn lagrange_inverse(p: &DiffeoJet) -> TruncSeries {
    let n = p.order();
    // ψ(w)/w as a series of order n−1
    let q = TruncSeries::new(p.series().coeffs()[1..].to_vec(), n - 1);
    let qinv = q.inverse().unwrap();
    let mut c = vec![Rational::zero()];
    for k in 1..=n {
        let pk = qinv.powi(k as i64).unwrap();
        c.push(pk.coeff(k - 1) / int(k as i64));
    }
    TruncSeries::new(c, n)
}

#[test]
fn jet_group_examples() {
    let p = jet(&[1], 4);
    assert_eq!(jet_compose(&p, &DiffeoJet::identity(4)).unwrap(), p);
    assert_eq!(jet_invert(&p).unwrap().series(), &TruncSeries::from_ints(&[0, 1, -1, 2, -5], 4));
    assert!(matches!(jet_compose(&p, &DiffeoJet::identity(5)), Err(DiffeoError::OrderMismatch(4, 5))));
    assert!(DiffeoJet::new(TruncSeries::from_ints(&[0, 2, 1], 3)).is_err());
    assert!(DiffeoJet::new(TruncSeries::from_ints(&[0, 1, 1], 3)).is_ok());
}

#[test]
fn jet_group_axioms_and_lagrange_oracle() {
    let mut r = rng(7);
    for _ in 0..30 {
        let (a, b, c) = (random_jet(&mut r, N), random_jet(&mut r, N), random_jet(&mut r, N));
        let ab_c = jet_compose(&jet_compose(&a, &b).unwrap(), &c).unwrap();
        let a_bc = jet_compose(&a, &jet_compose(&b, &c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        let ai = jet_invert(&a).unwrap();
        assert_eq!(ai.series(), &lagrange_inverse(&a));
        assert!(jet_compose(&a, &ai).unwrap().is_identity());
        assert!(jet_compose(&ai, &a).unwrap().is_identity());
    }
}

#[test]
fn delta_coordinate_examples() {
    let id = DiffeoJet::identity(6);
    for n in 1..=5 {
        assert_eq!(delta_coords(&id, n).unwrap(), Rational::zero());
    }
    let p = jet(&[1], 6);
    assert_eq!(delta_coords(&p, 1).unwrap(), int(2));
    assert_eq!(delta_coords(&p, 2).unwrap(), int(-4));
    assert_eq!(delta_coords(&p, 3).unwrap(), int(16));
    assert!(matches!(delta_coords(&p, 6), Err(DiffeoError::BeyondTruncation(6, 7, 6))));
}

#[test]
fn log_derivative_is_additive_under_composition() {
    let mut r = rng(11);
    for _ in 0..20 {
        let (p, q) = (random_jet(&mut r, N), random_jet(&mut r, N));
        let pq = jet_compose(&p, &q).unwrap();
        let rhs = &p.log_derivative().compose(&q.series().truncate(N - 1)).unwrap() + &q.log_derivative();
        assert_eq!(pq.log_derivative(), rhs);
    }
}

#[test]
fn coproduct_pairs_with_composition_in_reverse_order() {
    // ⟨Δδ_n, ψ₁ ⊗ ψ₂⟩ = δ_n(ψ₂ ∘ ψ₁)
    let mut r = rng(5);
    let mut differs = false;
    for _ in 0..10 {
        let (p1, p2) = (random_jet(&mut r, N), random_jet(&mut r, N));
        let c21 = jet_compose(&p2, &p1).unwrap();
        let c12 = jet_compose(&p1, &p2).unwrap();
        for n in 1..=6 {
            let mut v = Rational::zero();
            for (k, c) in &coproduct(&delta(n), 1) {
                let a = delta_poly_eval(&HElement::basis(k[0].clone()), &p1).unwrap();
                let b = delta_poly_eval(&HElement::basis(k[1].clone()), &p2).unwrap();
                v += a * b * c;
            }
            assert_eq!(v, delta_coords(&c21, n).unwrap(), "n = {n}");
            differs |= v != delta_coords(&c12, n).unwrap();
        }
    }
    assert!(differs, "the other orientation must be distinguishable");
}

#[test]
fn affine_group_law() {
    let k1 = AffineElement::new(rat(2, 1), rat(1, 3)).unwrap();
    let k2 = AffineElement::new(rat(1, 2), rat(-1, 1)).unwrap();
    let x = rat(5, 7);
    assert_eq!(k1.compose(&k2).apply(&x), k1.apply(&k2.apply(&x)));
    assert_eq!(k1.compose(&k1.inverse()), AffineElement::identity());
    assert!(AffineElement::new(Rational::zero(), Rational::zero()).is_err());
}

#[test]
fn right_action_of_affine_maps() {
    let mut r = rng(3);
    for _ in 0..10 {
        let p = random_jet(&mut r, N);
        assert_eq!(g1_right_action(&p, &AffineElement::identity()).unwrap(), p);
        let k1 = AffineElement::new(rat(r.gen_range(1..4), r.gen_range(1..3)), rat(r.gen_range(-2..3), 3)).unwrap();
        let k2 = AffineElement::new(rat(r.gen_range(1..4), r.gen_range(1..3)), rat(r.gen_range(-2..3), 2)).unwrap();
        let left = g1_right_action(&g1_right_action(&p, &k1).unwrap(), &k2).unwrap();
        assert_eq!(left, g1_right_action(&p, &k1.compose(&k2)).unwrap());
        // pure scaling multiplies δ_n by aⁿ
        let a = rat(r.gen_range(1..5), r.gen_range(1..4));
        let scaled = g1_right_action(&p, &AffineElement::new(a.clone(), Rational::zero()).unwrap()).unwrap();
        let mut an = Rational::one();
        for n in 1..N as u32 {
            an *= &a;
            assert_eq!(delta_coords(&scaled, n).unwrap(), &an * delta_coords(&p, n).unwrap());
        }
        for n in 1..=(N as u32 - 2) {
            assert_eq!(delta_coords_translation_derivative(&p, n).unwrap(), delta_coords(&p, n + 1).unwrap());
        }
    }
}

#[test]
fn scaling_example() {
    let p = jet(&[1, -2, 3, 1], 6);
    let d3 = delta_coords(&p, 3).unwrap();
    let two = AffineElement::new(int(2), Rational::zero()).unwrap();
    assert_eq!(delta_coords(&g1_right_action(&p, &two).unwrap(), 3).unwrap(), d3 * int(8));
}

fn xy_poly(f: &FiberFunction) -> CommPoly {
    // variable 0 = y, 1 = x; only nonnegative y powers
    CommPoly::from_terms(f.terms().iter().map(|(&(i, j), c)| {
        assert!(i >= 0);
        (Exponents::from_pairs([(0, i as u32), (1, j)]), c.clone())
    }))
}

#[test]
fn crossed_product_by_direct_substitution() {
    let mut r = rng(17);
    for _ in 0..20 {
        let p1 = random_jet(&mut r, N);
        let p2 = random_jet(&mut r, N);
        let f1 = FiberFunction::monomial(r.gen_range(0..3), r.gen_range(0..3), int(r.gen_range(1..4)), N as u32);
        let f2 = FiberFunction::monomial(r.gen_range(0..3), r.gen_range(0..3), int(r.gen_range(-3..0)), N as u32);
        let prod = CrossedElement::term(f1.clone(), p1.clone())
            .mul(&CrossedElement::term(f2.clone(), p2.clone()))
            .unwrap();
        let key = jet_compose(&p2, &p1).unwrap();
        let got = prod.fiber(&key).unwrap();
        // f₂(ψ₁'(x) y, ψ₁(x)) by polynomial substitution
        let psi = CommPoly::from_terms(p1.series().coeffs().iter().enumerate().map(|(k, c)| (Exponents::var_pow(1, k as u32), c.clone())));
        let dpsi = psi.derivative(1);
        let sub = xy_poly(&f2).substitute(1, &psi).substitute(0, &(&dpsi * &CommPoly::var(0)));
        let expect = &xy_poly(&f1) * &sub;
        let prec = got.prec();
        for (e, c) in expect.terms() {
            if e.get(1) <= prec {
                assert_eq!(got.coeff(e.get(0) as i32, e.get(1)), c.clone());
            }
        }
        let expect_count = expect.terms().keys().filter(|e| e.get(1) <= prec).count();
        assert_eq!(got.terms().len(), expect_count);
    }
}

#[test]
fn crossed_unit() {
    let mut r = rng(2);
    let u = random_crossed(&mut r, N, 3);
    let one = CrossedElement::term(FiberFunction::one(N as u32), DiffeoJet::identity(N));
    assert!(one.mul(&u).unwrap().agrees(&u));
    assert!(u.mul(&one).unwrap().agrees(&u));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn crossed_product_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_crossed(&mut r, N, 2);
        let b = random_crossed(&mut r, N, 2);
        let c = random_crossed(&mut r, N, 2);
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.agrees(&right));
        prop_assert!(left.prec().unwrap() >= N as u32 - 2);
    }
}

#[test]
fn delta_action_examples() {
    let u = CrossedElement::term(FiberFunction::monomial(1, 2, int(3), N as u32), DiffeoJet::identity(N));
    for n in 1..=4 {
        assert!(hopf_act(&delta(n), &u).unwrap().terms().all(|(_, f)| f.is_zero()));
    }
    // U_φ with φ⁻¹ = x + x²: γ₁ = y (log(1 + 2x))' = y (2 − 4x + 8x² − 16x³ + …)
    let phi = jet_invert(&jet(&[1], N)).unwrap();
    let v = CrossedElement::with_forward(FiberFunction::one(N as u32), &phi).unwrap();
    let w = hopf_act(&delta(1), &v).unwrap();
    let (psi, f) = w.terms().next().unwrap();
    assert_eq!(psi, &jet(&[1], N));
    let expect = FiberFunction::from_terms([((1, 0), int(2)), ((1, 1), int(-4)), ((1, 2), int(8)), ((1, 3), int(-16))], 3);
    assert!(f.agrees(&expect));
    assert_eq!(f.prec(), N as u32 - 2);
    assert!(matches!(hopf_act(&delta(N as u32), &v), Err(DiffeoError::BeyondTruncation(..))));
}

fn act(h: &HElement, u: &CrossedElement) -> CrossedElement {
    hopf_act(h, u).unwrap()
}

fn act_tensor(h: &HElement, a: &CrossedElement, b: &CrossedElement) -> CrossedElement {
    let mut out = CrossedElement::zero(a.order());
    for (k, c) in &coproduct(h, 1) {
        let l = act(&HElement::basis(k[0].clone()), a);
        let r = act(&HElement::basis(k[1].clone()), b);
        out = out.add(&l.mul(&r).unwrap().scale(c)).unwrap();
    }
    out
}

#[test]
fn hopf_action_axiom_on_random_pairs() {
    let mut r = rng(2024);
    let gens = [h_x(), h_y(), delta(1), delta(2), delta(3)];
    for _ in 0..50 {
        let a = random_crossed(&mut r, N, 2);
        let b = random_crossed(&mut r, N, 2);
        let ab = a.mul(&b).unwrap();
        for h in &gens {
            assert!(act(h, &ab).agrees(&act_tensor(h, &a, &b)), "h = {h}");
        }
    }
}

#[test]
fn leibniz_rule_for_x() {
    // X(ab) = X(a) b + a X(b) + δ₁(a) Y(b)
    let mut r = rng(99);
    for _ in 0..50 {
        let a = random_crossed(&mut r, N, 2);
        let b = random_crossed(&mut r, N, 2);
        let lhs = act(&h_x(), &a.mul(&b).unwrap());
        let rhs = act(&h_x(), &a)
            .mul(&b)
            .unwrap()
            .add(&a.mul(&act(&h_x(), &b)).unwrap())
            .unwrap()
            .add(&act(&delta(1), &a).mul(&act(&h_y(), &b)).unwrap())
            .unwrap();
        assert!(lhs.agrees(&rhs));
        // δ₁ itself is a derivation
        let l1 = act(&delta(1), &a.mul(&b).unwrap());
        let r1 = act(&delta(1), &a).mul(&b).unwrap().add(&a.mul(&act(&delta(1), &b)).unwrap()).unwrap();
        assert!(l1.agrees(&r1));
    }
}

#[test]
fn gamma_is_a_cocycle_and_the_inverse_convention_is_not() {
    let mut r = rng(8);
    let mut wrong_fails = false;
    for _ in 0..50 {
        let (p1, p2) = (random_jet(&mut r, N), random_jet(&mut r, N));
        let p21 = jet_compose(&p2, &p1).unwrap();
        let lhs = gamma(&p21, 1).unwrap();
        let rhs = gamma(&p1, 1).unwrap().add(&gamma(&p2, 1).unwrap().lift_compose(&p1));
        assert!(lhs.agrees(&rhs));
        // with the multiplier built from the forward map instead, the law breaks
        let inv = |p: &DiffeoJet| jet_invert(p).unwrap();
        let lw = gamma(&inv(&p21), 1).unwrap();
        let rw = gamma(&inv(&p1), 1).unwrap().add(&gamma(&inv(&p2), 1).unwrap().lift_compose(&p1));
        wrong_fails |= !lw.agrees(&rw);
    }
    assert!(wrong_fails);
}

#[test]
fn bracket_realization() {
    let mut r = rng(41);
    for _ in 0..50 {
        let u = random_crossed(&mut r, N, 2);
        for n in 1..=4 {
            let xd = act(&h_x(), &act(&delta(n), &u));
            let dx = act(&delta(n), &act(&h_x(), &u));
            assert!(xd.add(&dx.scale(&int(-1))).unwrap().agrees(&act(&delta(n + 1), &u)));
            let yd = act(&h_y(), &act(&delta(n), &u));
            let dy = act(&delta(n), &act(&h_y(), &u));
            assert!(yd.add(&dy.scale(&int(-1))).unwrap().agrees(&act(&delta(n), &u).scale(&int(n as i64))));
        }
        let yx = act(&h_y(), &act(&h_x(), &u));
        let xy = act(&h_x(), &act(&h_y(), &u));
        assert!(yx.add(&xy.scale(&int(-1))).unwrap().agrees(&act(&h_x(), &u)));
    }
}

#[test]
fn action_is_a_module_structure() {
    let mut r = rng(13);
    for _ in 0..15 {
        let h1 = random_element(&mut r, 2, 2);
        let h2 = random_element(&mut r, 2, 2);
        let u = random_crossed(&mut r, N, 2);
        let lhs = act(&normal_product(&h1, &h2), &u);
        assert!(lhs.agrees(&act(&h1, &act(&h2, &u))));
    }
}

#[test]
fn pairing_examples() {
    let f = FiberFunction::from_terms([((0, 0), int(3)), ((1, 1), int(2)), ((-1, 0), int(1))], N as u32);
    let id = AffineElement::identity();
    let u = CrossedElement::term(f.clone(), DiffeoJet::identity(N));
    assert_eq!(pair_crossed(&HElement::basis(Default::default()), &id, &u).unwrap(), int(4));
    let v = CrossedElement::term(f, jet(&[1], N));
    assert_eq!(pair_crossed(&delta(1), &id, &v).unwrap(), int(8));
    assert!(pair_crossed(&h_x(), &id, &v).is_err());
}

#[test]
fn pairing_matches_action_then_evaluation() {
    // evaluating h(f U*_ψ) at k = (a, 0) gives h(ψ·k) f(k)
    let mut r = rng(23);
    for _ in 0..10 {
        let p = random_jet(&mut r, N);
        let f = random_fiber(&mut r, N as u32, 3);
        let u = CrossedElement::term(f.clone(), p.clone());
        let h = &h_pow(&delta(1), 2) + &(&delta(2) - &normal_product(&delta(1), &delta(3)).scale(&rat(1, 2)));
        let a = rat(r.gen_range(1..4), r.gen_range(1..3));
        let k = AffineElement::new(a.clone(), Rational::zero()).unwrap();
        let acted = act(&h, &u);
        let value = acted.fiber(&p).unwrap().eval(&a, &Rational::zero());
        let pk = g1_right_action(&p, &k).unwrap();
        assert_eq!(value, delta_poly_eval(&h, &pk).unwrap() * f.eval(&a, &Rational::zero()));
        if a.is_one() {
            assert_eq!(value, pair_crossed(&h, &k, &u).unwrap());
        }
        assert_eq!(
            act(&h, &u).fiber(&p).unwrap().eval(&Rational::one(), &Rational::zero()),
            pair_crossed(&h, &AffineElement::identity(), &u).unwrap()
        );
    }
}

fn st(pairs: &[(i64, i64, u32, u32)]) -> CommPoly {
    CommPoly::from_terms(pairs.iter().map(|&(n, d, s, t)| (Exponents::from_pairs([(0, s), (1, t)]), rat(n, d))))
}

#[test]
fn expansional_examples() {
    let order = 6u32;
    let p = jet(&[1, -1, 2], order as usize + 2);
    // f = t gives ψ(t)
    let got = expansional_product(&p, &st(&[(1, 1, 0, 1)]), order).unwrap();
    assert_eq!(got, st(&[(1, 1, 0, 1), (1, 1, 0, 2), (-1, 1, 0, 3), (2, 1, 0, 4)]));
    // identity leaves f unchanged
    let f = st(&[(1, 1, 2, 1), (-3, 2, 0, 2), (1, 1, 1, 0)]);
    assert_eq!(expansional_product(&DiffeoJet::identity(8), &f, order).unwrap(), f);
    // f = s gives s + log ψ'(t)
    let got = expansional_product(&p, &st(&[(1, 1, 1, 0)]), order).unwrap();
    let l = p.log_derivative();
    let mut expect = st(&[(1, 1, 1, 0)]);
    for k in 1..=order {
        expect = expect + st(&[(1, 1, 0, k)]).scale(&l.coeff(k as usize));
    }
    assert_eq!(got, expect);
}

#[test]
fn expansional_identity_on_random_jets() {
    let mut r = rng(77);
    let order = 6u32;
    let fs = [
        st(&[(1, 1, 0, 1)]),
        st(&[(1, 1, 2, 0)]),
        st(&[(1, 1, 3, 0), (-2, 1, 1, 0)]),
        st(&[(1, 1, 1, 1), (1, 2, 0, 2)]),
        st(&[(2, 3, 2, 1), (1, 1, 0, 3), (-1, 1, 1, 0)]),
    ];
    for _ in 0..20 {
        let p = random_jet(&mut r, order as usize + 2);
        for f in &fs {
            assert_eq!(
                expansional_product(&p, f, order).unwrap(),
                expansional_closed_form(&p, f, order).unwrap(),
                "f = {f:?}"
            );
        }
    }
}

#[test]
fn expansional_needs_enough_order() {
    let p = DiffeoJet::identity(4);
    assert!(expansional_product(&p, &st(&[(1, 1, 0, 1)]), 6).is_err());
}
