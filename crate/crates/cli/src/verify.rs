//! Verification suites. Each suite returns named checks; a check records how many cases
//! it ran and the first counterexample it met.

use std::collections::BTreeMap;
use std::time::Instant;

use hopfcyc::algebra_kernel::{int, mat_rank_kernel, rat, CommPoly, Exponents, LinComb, Rational, TruncSeries};
use hopfcyc::enveloping_dual::{gram_matrix, pair, rho_map, u_monomials_of_weight, u_product, UElement, UMonomial};
use hopfcyc::formal_calculus::{parse_fixture, verify_appendix, APPENDIX_FIXTURE};
use hopfcyc::formal_diffeo::{
    expansional_closed_form, expansional_product, gamma, hopf_act, jet_compose, random_crossed, random_fiber, random_jet,
    CrossedElement, DiffeoJet, FiberFunction,
};
use hopfcyc::hopf_cyclic::{check_cyclic_relations, AffineEnveloping, CyclicModule, CyclicTensor, FiniteHopf, HopfAlgebra, H1};
use hopfcyc::hopf_h1::{
    antipode, coproduct, coproduct_leg, counit, delta, h_one, h_pow, h_scalar, h_x, h_y, modular_character,
    monomials_up_to_degree, normal_product, random_element, tensor_counit_leg, tensor_mul, twisted_antipode,
    twisted_antipode_convolution, DeltaMono, HElement, PbwMonomial,
};
use hopfcyc::lie_cohomology::{Coefficients, FiniteLieAlgebra, WeilComplex, WeilVariant, Wedge};
use hopfcyc::matched_pair::{kernels_agree, BElem, BicrossedHopf, Factorization, TraceChoice};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cli::Suite;
use crate::config::Params;
use crate::encode;
use crate::{CommandResult, Status};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub reference: &'static str,
    pub cases: usize,
    pub counterexample: Option<String>,
    pub note: Option<String>,
    pub millis: u128,
}

impl Check {
    fn new(name: impl Into<String>, reference: &'static str) -> Self {
        Check { name: name.into(), reference, cases: 0, counterexample: None, note: None, millis: 0 }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    fn to_json(&self) -> Value {
        let mut v = json!({"name": self.name, "reference": self.reference, "status": if self.passed() { "pass" } else { "fail" }, "cases": self.cases});
        if let Some(c) = &self.counterexample {
            v["counterexample"] = json!(c);
        }
        if let Some(n) = &self.note {
            v["report"] = json!(n);
        }
        v
    }
}

/// Runs `body` against a fresh check and stamps its duration.
fn timed(name: &str, reference: &'static str, body: impl FnOnce(&mut Check)) -> Check {
    let start = Instant::now();
    let mut c = Check::new(name, reference);
    body(&mut c);
    c.millis = start.elapsed().as_millis();
    c
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Hopf => "hopf",
        Suite::Duality => "duality",
        Suite::Action => "action",
        Suite::MatchedPair => "matched-pair",
        Suite::Cyclic => "cyclic",
        Suite::Cohomology => "cohomology",
        Suite::Appendix => "appendix",
        Suite::All => "all",
    }
}

const SUITES: [Suite; 7] =
    [Suite::Hopf, Suite::Duality, Suite::Action, Suite::MatchedPair, Suite::Cyclic, Suite::Cohomology, Suite::Appendix];

/// Range checks on the parameters, so that nonsense fails fast with exit code 2.
pub fn validate(p: &Params) -> Result<(), String> {
    if let Some(w) = p.max_weight {
        if w > 7 {
            return Err(format!("--max-weight must be at most 7, got {w}"));
        }
    }
    if let Some(t) = p.trials {
        if t > 10_000 {
            return Err(format!("--trials must be at most 10000, got {t}"));
        }
    }
    if let Some(n) = p.n {
        if n > 4 {
            return Err(format!("--n must be at most 4, got {n}"));
        }
    }
    if let Some(o) = p.order {
        if !(6..=16).contains(&o) {
            return Err(format!("--order must be in 6..=16, got {o}"));
        }
    }
    Ok(())
}

fn run_suite(s: Suite, p: &Params) -> Result<Vec<Check>, String> {
    Ok(match s {
        Suite::Hopf => hopf_suite(p),
        Suite::Duality => duality_suite(p),
        Suite::Action => action_suite(p),
        Suite::MatchedPair => matched_pair_suite(p),
        Suite::Cyclic => cyclic_suite(p),
        Suite::Cohomology => cohomology_suite(p),
        Suite::Appendix => appendix_suite(p)?,
        Suite::All => {
            let results: Vec<Result<Vec<Check>, String>> = std::thread::scope(|scope| {
                let handles: Vec<_> = SUITES.iter().map(|&s| scope.spawn(move || run_suite(s, p))).collect();
                handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
            });
            let mut all = Vec::new();
            for r in results {
                all.extend(r?);
            }
            all
        }
    })
}

pub fn verify(suite: Suite, params: &Params) -> CommandResult {
    if let Err(e) = validate(params) {
        return CommandResult::usage(e);
    }
    let start = Instant::now();
    let mut checks = match run_suite(suite, params) {
        Ok(c) => c,
        Err(e) => return CommandResult::usage(e),
    };
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    let status = if failed.is_empty() { Status::Success } else { Status::Violation };
    let mut summary = String::new();
    for c in &checks {
        summary.push_str(&format!("{} {} ({} cases, {} ms)\n", if c.passed() { "PASS" } else { "FAIL" }, c.name, c.cases, c.millis));
        if let Some(note) = &c.note {
            summary.push_str(&format!("     {note}\n"));
        }
        if let Some(ce) = &c.counterexample {
            summary.push_str(&format!("     violated: {}\n", c.reference));
            for line in ce.lines() {
                summary.push_str(&format!("     {line}\n"));
            }
        }
    }
    summary.push_str(&format!(
        "{}: {} of {} checks passed in {:.1} s",
        suite_name(suite),
        checks.len() - failed.len(),
        checks.len(),
        start.elapsed().as_secs_f64()
    ));
    let body = json!({
        "suite": suite_name(suite),
        "params": {
            "max_weight": params.max_weight,
            "trials": params.trials,
            "seed": params.seed(),
            "n": params.n,
            "order": params.order,
        },
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
    });
    let word = if failed.is_empty() { "success" } else { "invariant-violation" };
    CommandResult { status, payload: encode::document("verify", suite_name(suite), word, body), summary, latex: None }
}

// ---------------------------------------------------------------- H(1)

fn basis(m: &PbwMonomial) -> HElement {
    HElement::basis(m.clone())
}

fn delta_poly(terms: &[(i64, i64, &[u32])]) -> HElement {
    LinComb::from_terms(
        terms.iter().map(|(n, d, a)| (PbwMonomial::delta_only(DeltaMono::from_exponents(a.to_vec())), rat(*n, *d))),
    )
}

/// `m(f ⊗ g)Δ(h)`.
fn convolve(h: &HElement, f: impl Fn(&HElement) -> HElement, g: impl Fn(&HElement) -> HElement) -> HElement {
    let mut out = HElement::zero();
    for (k, c) in &coproduct(h, 1) {
        out.add_scaled(&normal_product(&f(&basis(&k[0])), &g(&basis(&k[1]))), c);
    }
    out
}

/// `S` on δ-monomials from `m(S ⊗ id)Δ = ε`, peeling off the `h ⊗ 1` term.
fn antipode_by_recursion(m: &PbwMonomial, memo: &mut BTreeMap<PbwMonomial, HElement>) -> HElement {
    if let Some(s) = memo.get(m) {
        return s.clone();
    }
    let h = basis(m);
    let mut s = h_scalar(counit(&h));
    for (k, c) in &coproduct(&h, 1) {
        if k[1].is_one() && &k[0] == m {
            continue;
        }
        let sk = antipode_by_recursion(&k[0], memo);
        s.add_scaled(&normal_product(&sk, &basis(&k[1])), &-c);
    }
    memo.insert(m.clone(), s.clone());
    s
}

fn hopf_suite(p: &Params) -> Vec<Check> {
    let w = p.max_weight.unwrap_or(5);
    let trials = p.trials.unwrap_or(100);
    let monos = monomials_up_to_degree(w);
    let mut out = Vec::new();
    out.push(timed("hopf/coassociativity", "coassociativity of the coproduct of H(1)", |c| {
        for m in &monos {
            let d = coproduct(&basis(m), 1);
            c.record(coproduct_leg(&d, 0) == coproduct_leg(&d, 1), || format!("(Δ⊗id)Δ ≠ (id⊗Δ)Δ at {m}"));
        }
    }));
    out.push(timed("hopf/counit", "counit axiom of H(1)", |c| {
        for m in &monos {
            let h = basis(m);
            let d = coproduct(&h, 1);
            let left = tensor_counit_leg(&d, 0).map_keys(|k| k[0].clone());
            let right = tensor_counit_leg(&d, 1).map_keys(|k| k[0].clone());
            c.record(left == h && right == h, || format!("(ε⊗id)Δ or (id⊗ε)Δ differs from id at {m}"));
        }
    }));
    out.push(timed("hopf/antipode-axiom", "antipode axiom m(S⊗id)Δ = m(id⊗S)Δ = ε", |c| {
        for m in &monos {
            let h = basis(m);
            let e = h_scalar(counit(&h));
            let l = convolve(&h, antipode, |x| x.clone());
            let r = convolve(&h, |x| x.clone(), antipode);
            c.record(l == e && r == e, || format!("at {m}: m(S⊗id)Δ = {l}, m(id⊗S)Δ = {r}"));
        }
    }));
    out.push(timed("hopf/bialgebra-products", "Δ, ε and δ multiplicative, S anti-multiplicative", |c| {
        let mut r = rng(p.seed(), 1);
        for _ in 0..trials.min(if w == 0 { 0 } else { usize::MAX }) {
            let u = random_element(&mut r, w.min(3), 2);
            let v = random_element(&mut r, w.min(3), 2);
            let uv = normal_product(&u, &v);
            let ok = coproduct(&uv, 1) == tensor_mul(&coproduct(&u, 1), &coproduct(&v, 1))
                && antipode(&uv) == normal_product(&antipode(&v), &antipode(&u))
                && counit(&uv) == counit(&u) * counit(&v)
                && modular_character(&uv) == modular_character(&u) * modular_character(&v);
            c.record(ok, || format!("u = {u}, v = {v}"));
        }
    }));
    out.push(timed("hopf/antipode-table", "printed antipode table S(δ1), S(δ2), S(δ3)", |c| {
        let printed = [
            delta_poly(&[(-1, 1, &[1])]),
            delta_poly(&[(-1, 1, &[0, 1]), (1, 1, &[2])]),
            delta_poly(&[(-1, 1, &[0, 0, 1]), (4, 1, &[1, 1]), (-2, 1, &[3])]),
        ];
        for (i, want) in printed.iter().enumerate().take(w.min(3) as usize) {
            let n = i as u32 + 1;
            let got = antipode(&delta(n));
            c.record(&got == want, || format!("S(δ{n}) = {got}, printed {want}"));
        }
    }));
    out.push(timed("hopf/antipode-two-routes", "S(δn) by convolution recursion and by ρ∘S = ρ̃ at −x", |c| {
        let mut memo = BTreeMap::new();
        memo.insert(PbwMonomial::one(), h_one());
        for n in 1..=w.min(6) {
            let s = antipode(&delta(n));
            let rec = antipode_by_recursion(&PbwMonomial::delta_only(DeltaMono::generator(n)), &mut memo);
            c.record(rec == s, || format!("S(δ{n}) = {s}, recursion gives {rec}"));
            let lhs = rho_map(&s, false).expect("δ-polynomial");
            let rhs = rho_map(&delta(n), true).expect("δ-polynomial").rename(|j| (j, int(-1)));
            c.record(lhs == rhs, || format!("ρ(S δ{n}) = {lhs:?}, ρ̃(δ{n})(−x) = {rhs:?}"));
        }
    }));
    out.push(timed("hopf/twisted-antipode", "S̃ = δ∗S is an involution", |c| {
        for m in &monos {
            let h = basis(m);
            let st = twisted_antipode(&h);
            c.record(st == twisted_antipode_convolution(&h), || format!("S∘σ ≠ δ∗S at {m}"));
            c.record(twisted_antipode(&st) == h, || format!("S̃²({m}) = {}", twisted_antipode(&st)));
        }
    }));
    out
}

// ---------------------------------------------------------------- duality

fn rho_poly(terms: &[(i64, i64, &[(u32, u32)])]) -> CommPoly {
    CommPoly::from_terms(terms.iter().map(|(n, d, e)| (Exponents::from_pairs(e.iter().copied()), rat(*n, *d))))
}

fn duality_suite(p: &Params) -> Vec<Check> {
    let w = p.max_weight.unwrap_or(5);
    let mut out = Vec::new();
    out.push(timed("duality/coproduct-pairing", "⟨Δh, a⊗b⟩ = ⟨h, ab⟩", |c| {
        for wt in 1..=w {
            for wa in 0..=wt {
                let wb = wt - wa;
                let us = |k: u32| if k == 0 { vec![UMonomial::one()] } else { u_monomials_of_weight(k) };
                for a in &us(wa) {
                    for b in &us(wb) {
                        let ea = UElement::monomial(a.clone(), wt).expect("level");
                        let eb = UElement::monomial(b.clone(), wt).expect("level");
                        let ab = u_product(&ea, &eb).expect("same level");
                        for d in DeltaMono::all_of_weight(wt) {
                            let h = HElement::basis(PbwMonomial::delta_only(d.clone()));
                            let mut lhs = Rational::zero();
                            for (k, coef) in &coproduct(&h, 1) {
                                let p0 = pair(&basis(&k[0]), &ea).expect("pairing");
                                if !p0.is_zero() {
                                    lhs += p0 * pair(&basis(&k[1]), &eb).expect("pairing") * coef;
                                }
                            }
                            let rhs = pair(&h, &ab).expect("pairing");
                            c.record(lhs == rhs, || format!("⟨Δ{d}, {a} ⊗ {b}⟩ = {lhs}, ⟨{d}, {a}{b}⟩ = {rhs}"));
                        }
                    }
                }
            }
        }
    }));
    out.push(timed("duality/gram-nonsingular", "nondegenerate pairing in each weight", |c| {
        for wt in 1..=w {
            let g = gram_matrix(wt);
            let (rank, _) = mat_rank_kernel(&g);
            c.record(rank == g.rows() && g.rows() == g.cols(), || format!("weight {wt}: rank {rank} of {}×{}", g.rows(), g.cols()));
        }
    }));
    out.push(timed("duality/rho-printed", "printed values of ρ(δn), ρ̃(δn) and of the Schwarzian", |c| {
        let x = |j: u32| rho_poly(&[(1, 1, &[(j, 1)])]);
        let cases: Vec<(String, HElement, bool, CommPoly)> = vec![
            ("ρ(δ1)".into(), delta(1), false, x(1)),
            ("ρ(δ2)".into(), delta(2), false, rho_poly(&[(1, 1, &[(2, 1)]), (1, 2, &[(1, 2)])])),
            ("ρ(δ3)".into(), delta(3), false, rho_poly(&[(1, 1, &[(3, 1)]), (1, 1, &[(2, 1), (1, 1)]), (1, 2, &[(1, 3)])])),
            (
                "ρ(δ4)".into(),
                delta(4),
                false,
                rho_poly(&[(1, 1, &[(4, 1)]), (1, 1, &[(3, 1), (1, 1)]), (2, 1, &[(2, 2)]), (2, 1, &[(2, 1), (1, 2)]), (3, 4, &[(1, 4)])]),
            ),
            ("ρ̃(δ3)".into(), delta(3), true, rho_poly(&[(1, 1, &[(3, 1)]), (3, 1, &[(1, 1), (2, 1)]), (1, 2, &[(1, 3)])])),
            (
                "ρ̃(δ4)".into(),
                delta(4),
                true,
                rho_poly(&[(1, 1, &[(4, 1)]), (2, 1, &[(2, 2)]), (6, 1, &[(1, 1), (3, 1)]), (9, 1, &[(1, 2), (2, 1)]), (3, 4, &[(1, 4)])]),
            ),
            ("ρ(δ2 − δ1²/2)".into(), &delta(2) - &h_pow(&delta(1), 2).scale(&rat(1, 2)), false, x(2)),
        ];
        for (label, h, rev, want) in cases {
            let got = rho_map(&h, rev).expect("δ-polynomial");
            c.record(got == want, || format!("{label} = {got:?}, printed {want:?}"));
        }
    }));
    out.push(timed("duality/rho-multiplicative", "ρ is an algebra map", |c| {
        for a in 1..=w.min(4) {
            for b in a..=w.min(4) {
                let prod = normal_product(&delta(a), &delta(b));
                let lhs = rho_map(&prod, false).expect("δ-polynomial");
                let rhs = &rho_map(&delta(a), false).expect("δ-polynomial") * &rho_map(&delta(b), false).expect("δ-polynomial");
                c.record(lhs == rhs, || format!("ρ(δ{a}δ{b}) ≠ ρ(δ{a})ρ(δ{b})"));
            }
        }
    }));
    out
}

// ---------------------------------------------------------------- action on jets

fn act(h: &HElement, u: &CrossedElement) -> CrossedElement {
    hopf_act(h, u).expect("within truncation")
}

/// `γ₁ = y ψ''/ψ'` by series division, then `γ_{k+1} = X γ_k`.
fn gamma_by_iteration(p: &DiffeoJet, n: u32) -> FiberFunction {
    let d1 = p.series().derivative();
    let d2 = d1.derivative();
    let q: TruncSeries = &d2 * &d1.truncate(d2.order()).inverse().expect("ψ'(0) = 1");
    let mut g = FiberFunction::from_series(1, &q);
    for _ in 1..n {
        g = g.x_derivation();
    }
    g
}

fn st(terms: &[(i64, i64, u32, u32)]) -> CommPoly {
    CommPoly::from_terms(terms.iter().map(|&(n, d, s, t)| (Exponents::from_pairs([(0, s), (1, t)]), rat(n, d))))
}

fn action_suite(p: &Params) -> Vec<Check> {
    let trials = p.trials.unwrap_or(50);
    let order = p.order.unwrap_or(8);
    let top = (order as u32 - 2).min(4);
    let seed = p.seed();
    let mut out = Vec::new();
    out.push(timed("action/leibniz-x", "X(ab) = X(a)b + aX(b) + δ1(a)Y(b)", |c| {
        let mut r = rng(seed, 11);
        for _ in 0..trials {
            let a = random_crossed(&mut r, order, 2);
            let b = random_crossed(&mut r, order, 2);
            let lhs = act(&h_x(), &a.mul(&b).expect("product"));
            let rhs = act(&h_x(), &a)
                .mul(&b)
                .and_then(|t| t.add(&a.mul(&act(&h_x(), &b))?))
                .and_then(|t| t.add(&act(&delta(1), &a).mul(&act(&h_y(), &b))?))
                .expect("same order");
            c.record(lhs.agrees(&rhs), || "Leibniz rule for X fails on a random pair".into());
            let l1 = act(&delta(1), &a.mul(&b).expect("product"));
            let r1 = act(&delta(1), &a).mul(&b).and_then(|t| t.add(&a.mul(&act(&delta(1), &b))?)).expect("same order");
            c.record(l1.agrees(&r1), || "δ1 is not a derivation on a random pair".into());
        }
    }));
    out.push(timed("action/gamma-multiplier", "δn(f U*ψ) = γn f U*ψ with γn = yⁿ ∂ⁿ log ψ'", |c| {
        let mut r = rng(seed, 12);
        for _ in 0..trials {
            let psi = random_jet(&mut r, order);
            let f = random_fiber(&mut r, order as u32, 3);
            let u = CrossedElement::term(f.clone(), psi.clone());
            for n in 1..=top {
                let acted = act(&delta(n), &u);
                let got = acted.fiber(&psi).cloned().unwrap_or_else(|| FiberFunction::zero(0));
                let want = gamma_by_iteration(&psi, n).mul(&f);
                c.record(got.agrees(&want), || format!("δ{n} on f U*ψ with ψ = {}", psi.series()));
            }
        }
    }));
    out.push(timed("action/cocycle", "γ1(ψ2∘ψ1) = γ1(ψ1) + γ1(ψ2)∘ψ̃1", |c| {
        let mut r = rng(seed, 13);
        for _ in 0..trials {
            let (p1, p2) = (random_jet(&mut r, order), random_jet(&mut r, order));
            let p21 = jet_compose(&p2, &p1).expect("same order");
            let lhs = gamma(&p21, 1).expect("order");
            let rhs = gamma(&p1, 1).expect("order").add(&gamma(&p2, 1).expect("order").lift_compose(&p1));
            c.record(lhs.agrees(&rhs), || format!("ψ1 = {}, ψ2 = {}", p1.series(), p2.series()));
        }
    }));
    out.push(timed("action/bracket-realization", "[X, δn] = δn+1, [Y, δn] = nδn, [Y, X] = X", |c| {
        let mut r = rng(seed, 14);
        for _ in 0..trials {
            let u = random_crossed(&mut r, order, 2);
            for n in 1..top {
                let xd = act(&h_x(), &act(&delta(n), &u));
                let dx = act(&delta(n), &act(&h_x(), &u));
                let ok = xd.add(&dx.scale(&int(-1))).expect("same order").agrees(&act(&delta(n + 1), &u));
                c.record(ok, || format!("[X, δ{n}] ≠ δ{}", n + 1));
                let yd = act(&h_y(), &act(&delta(n), &u));
                let dy = act(&delta(n), &act(&h_y(), &u));
                let ok = yd.add(&dy.scale(&int(-1))).expect("same order").agrees(&act(&delta(n), &u).scale(&int(n as i64)));
                c.record(ok, || format!("[Y, δ{n}] ≠ {n}δ{n}"));
            }
            let yx = act(&h_y(), &act(&h_x(), &u));
            let xy = act(&h_x(), &act(&h_y(), &u));
            c.record(yx.add(&xy.scale(&int(-1))).expect("same order").agrees(&act(&h_x(), &u)), || "[Y, X] ≠ X".into());
        }
    }));
    out.push(timed("action/expansional", "expansional product equals its closed form", |c| {
        let mut r = rng(seed, 15);
        let eo = 6u32;
        let fs = [
            st(&[(1, 1, 0, 1)]),
            st(&[(1, 1, 1, 0)]),
            st(&[(1, 1, 2, 0)]),
            st(&[(1, 1, 3, 0), (-2, 1, 1, 0)]),
            st(&[(1, 1, 1, 1), (1, 2, 0, 2)]),
        ];
        for _ in 0..trials.min(20) {
            let psi = random_jet(&mut r, eo as usize + 2);
            for f in &fs {
                let a = expansional_product(&psi, f, eo).expect("order");
                let b = expansional_closed_form(&psi, f, eo).expect("order");
                c.record(a == b, || format!("f = {f:?}, ψ = {}", psi.series()));
            }
        }
    }));
    out
}

// ---------------------------------------------------------------- finite bicrossed products

const AXIOM_GROUPS: [&str; 8] = ["s3-group", "s3-functions", "c6-group", "c6-functions", "s3", "s3-swap", "c6", "f21"];
const SMALL: [&str; 7] = ["s3", "s3-swap", "s3-group", "s3-functions", "c6", "c4-group", "c6-functions"];

fn builtin(name: &str) -> BicrossedHopf {
    BicrossedHopf::new(Factorization::builtin(name).expect("built-in factorization"))
}

fn matched_pair_suite(_p: &Params) -> Vec<Check> {
    let mut out = Vec::new();
    for name in AXIOM_GROUPS {
        out.push(timed(&format!("matched-pair/axioms/{name}"), "Hopf axioms of the bicrossed product", |c| {
            let r = builtin(name).verify_axioms();
            c.record(r.is_ok(), || r.unwrap_err().to_string());
        }));
    }
    out.push(timed("matched-pair/lemma1", "compatibility of the mutual actions of a matched pair", |c| {
        for name in AXIOM_GROUPS {
            let f = Factorization::builtin(name).expect("built-in");
            for a in 0..f.n2() {
                for k1 in 0..f.n1() {
                    for k2 in 0..f.n1() {
                        let k12 = f.mul1(k1, k2);
                        let ok = f.act_left(a, k12) == f.mul1(f.act_left(a, k1), f.act_left(f.act_right(a, k1), k2))
                            && f.act_right(a, k12) == f.act_right(f.act_right(a, k1), k2);
                        c.record(ok, || format!("{name}: a = {}, k1 = {}, k2 = {}", f.name2(a), f.name1(k1), f.name1(k2)));
                    }
                }
            }
            for k in 0..f.n1() {
                for a1 in 0..f.n2() {
                    for a2 in 0..f.n2() {
                        let a12 = f.mul2(a1, a2);
                        let ok = f.act_right(a12, k) == f.mul2(f.act_right(a1, f.act_left(a2, k)), f.act_right(a2, k))
                            && f.act_left(a12, k) == f.act_left(a1, f.act_left(a2, k));
                        c.record(ok, || format!("{name}: a1 = {}, a2 = {}, k = {}", f.name2(a1), f.name2(a2), f.name1(k)));
                    }
                }
            }
        }
    }));
    out.push(timed("matched-pair/lemma2", "actions of H on its dual are transposed products", |c| {
        for name in SMALL {
            let h = builtin(name);
            let d = h.dim();
            for g in 0..d {
                for x in 0..d {
                    let left = h.left_action_basis(g, x);
                    let right = h.right_action_basis(x, g);
                    for hp in 0..d {
                        let ok = (left == Some(hp)) == (h.mul_basis(hp, g) == Some(x))
                            && (right == Some(hp)) == (h.mul_basis(g, hp) == Some(x));
                        c.record(ok, || format!("{name}: g = {}, x = {}, h' = {}", h.basis_name(g), h.dual_basis_name(x), h.dual_basis_name(hp)));
                    }
                }
            }
            for x in 0..d {
                let bx = BElem::basis(x);
                for g1 in 0..d {
                    for g2 in 0..d {
                        let (a, b) = (BElem::basis(g1), BElem::basis(g2));
                        let ok = h.left_action(&h.mul(&a, &b), &bx) == h.left_action(&a, &h.left_action(&b, &bx))
                            && h.right_action(&bx, &h.mul(&a, &b)) == h.right_action(&h.right_action(&bx, &a), &b);
                        c.record(ok, || format!("{name}: module axiom at {}, {}", h.basis_name(g1), h.basis_name(g2)));
                    }
                }
            }
        }
    }));
    out.push(timed("matched-pair/modular-character", "modular character is the counit, S̃ = S", |c| {
        for name in AXIOM_GROUPS {
            let h = builtin(name);
            let m = h.modular_character_basis();
            let counit: Vec<Rational> = (0..h.dim()).map(|i| h.counit_basis(i)).collect();
            c.record(m.as_ref().ok() == Some(&counit), || format!("{name}: δ ≠ ε"));
            for i in 0..h.dim() {
                let x = BElem::basis(i);
                c.record(h.twisted_antipode(&x).ok() == Some(h.antipode(&x)), || format!("{name}: S̃ ≠ S at {}", h.basis_name(i)));
            }
        }
    }));
    out.push(timed("matched-pair/kernel-theta-t", "Ker θ = Ker t on H⊗H", |c| {
        for name in SMALL {
            let h = builtin(name);
            for choice in [TraceChoice::Sum, TraceChoice::Normalized] {
                let r = kernels_agree(&h, 1, choice);
                let ok = matches!(r, Ok((_, _, _, true)));
                c.record(ok, || format!("{name} {choice:?}: {r:?}"));
            }
        }
    }));
    out
}

// ---------------------------------------------------------------- cyclic module

fn random_tensor<H: HopfAlgebra, R: Rng>(m: &CyclicModule<H>, rng: &mut R, level: usize, degree: u32) -> CyclicTensor<H::Basis> {
    if level == 0 {
        return CyclicTensor::scalar(int(rng.gen_range(1..=5)));
    }
    let pool = m.algebra().sample_basis(degree);
    let mut out = CyclicTensor::zero(level);
    for _ in 0..3 {
        let key: Vec<_> = (0..level).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        out = out.add(&CyclicTensor::basis(key).scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))));
    }
    out
}

/// H(1) basis tensors whose leg degrees add up to at most `total`.
fn h1_low_tensors(level: usize, total: u32) -> Vec<CyclicTensor<PbwMonomial>> {
    let mut keys = vec![(Vec::new(), 0u32)];
    for _ in 0..level {
        let mut next = Vec::new();
        for (k, used) in &keys {
            for m in monomials_up_to_degree(total - used) {
                let d = m.degree();
                let mut k2: Vec<PbwMonomial> = k.clone();
                k2.push(m);
                next.push((k2, used + d));
            }
        }
        keys = next;
    }
    keys.into_iter().map(|(k, _)| if k.is_empty() { CyclicTensor::scalar(int(1)) } else { CyclicTensor::basis(k) }).collect()
}

fn relations<H: HopfAlgebra>(c: &mut Check, m: &CyclicModule<H>, inputs: &[CyclicTensor<H::Basis>]) {
    for t in inputs {
        let failures = check_cyclic_relations(m, std::slice::from_ref(t));
        c.record(failures.is_empty(), || failures.join("\n"));
    }
}

fn bicomplex<H: HopfAlgebra, R: Rng>(c: &mut Check, m: &CyclicModule<H>, r: &mut R, top: usize, per_level: usize, degree: u32) {
    for level in 0..=top {
        // legs of degree ≤ 1 keep the level-4 coproducts of H(1) affordable
        let degree = if level >= 3 { degree.min(1) } else { degree };
        for _ in 0..per_level {
            let t = random_tensor(m, r, level, degree);
            let bb = m.hochschild_b(&m.hochschild_b(&t));
            c.record(bb.is_zero(), || format!("b² ≠ 0 on {}", m.display(&t)));
            let big = m.connes_b(&m.connes_b(&t));
            c.record(big.is_zero(), || format!("B² ≠ 0 on {}", m.display(&t)));
            if level == 0 {
                c.record(m.connes_b(&m.hochschild_b(&t)).is_zero(), || format!("Bb ≠ 0 on {}", m.display(&t)));
                continue;
            }
            let anti = m.hochschild_b(&m.connes_b(&t)).add(&m.connes_b(&m.hochschild_b(&t)));
            c.record(anti.is_zero(), || format!("bB + Bb ≠ 0 on {}", m.display(&t)));
        }
    }
}

fn cyclic_suite(p: &Params) -> Vec<Check> {
    let n = p.n.unwrap_or(3);
    let trials = p.trials.unwrap_or(100);
    let w = p.max_weight.unwrap_or(3);
    let seed = p.seed();
    let per_level = trials.div_ceil(20).max(1);
    let h1 = CyclicModule::new(H1);
    let s3 = CyclicModule::new(FiniteHopf::new(builtin("s3")).expect("finite Hopf algebra"));
    let aff = CyclicModule::new(AffineEnveloping);
    let mut out = Vec::new();
    out.push(timed("cyclic/relations/h1-basis", "cocyclic relations and τn^(n+1) = 1 on H(1) basis tensors", |c| {
        for level in 0..=n {
            relations(c, &h1, &h1_low_tensors(level, w));
        }
    }));
    out.push(timed("cyclic/relations/h1-random", "cocyclic relations on random H(1) tensors", |c| {
        let mut r = rng(seed, 21);
        let inputs: Vec<_> = (0..trials).map(|i| random_tensor(&h1, &mut r, i % (n + 1), 2)).collect();
        relations(c, &h1, &inputs);
    }));
    out.push(timed("cyclic/relations/s3", "cocyclic relations for the S3 bicrossed product", |c| {
        for level in 0..=n.min(2) {
            relations(c, &s3, &s3.basis_tensors(level, 0));
        }
        let mut r = rng(seed, 22);
        let inputs: Vec<_> = (0..trials).map(|i| random_tensor(&s3, &mut r, i % (n + 1), 0)).collect();
        relations(c, &s3, &inputs);
    }));
    out.push(timed("cyclic/relations/affine", "cocyclic relations for the enveloping algebra of the affine algebra", |c| {
        for level in 0..=n {
            relations(c, &aff, &aff.basis_tensors(level, 1));
        }
    }));
    out.push(timed("cyclic/bicomplex/h1", "b² = B² = bB + Bb = 0 for H(1)", |c| {
        bicomplex(c, &h1, &mut rng(seed, 23), n + 1, per_level, 2);
    }));
    out.push(timed("cyclic/bicomplex/s3", "b² = B² = bB + Bb = 0 for the S3 bicrossed product", |c| {
        bicomplex(c, &s3, &mut rng(seed, 24), n + 1, per_level, 0);
    }));
    out.push(timed("cyclic/bicomplex/affine", "b² = B² = bB + Bb = 0 for the affine enveloping algebra", |c| {
        bicomplex(c, &aff, &mut rng(seed, 25), n + 1, per_level, 2);
    }));
    out
}

// ---------------------------------------------------------------- cohomology

fn cohomology_suite(_p: &Params) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(timed("cohomology/wo1-godbillon-vey", "H*(WO(1)) = (1, 0, 0, 1) spanned by h1c1 in degree 3", |c| {
        let w = WeilComplex::new(1, WeilVariant::WO).expect("n = 1");
        let h = w.cohomology();
        c.record(h.betti == vec![1, 0, 0, 1], || format!("betti {:?}", h.betti));
        let gv = w.mul(&w.generator_h(1), &w.generator_c(1));
        let ok = h.representatives.get(3).is_some_and(|r| r.len() == 1 && w.to_vector(&r[0], 3) == w.to_vector(&gv, 3));
        c.record(ok, || "degree 3 class is not h1c1".into());
    }));
    out.push(timed("cohomology/weil-differential", "d² = 0 and dh1 = c1 in WO(n), WSO(n)", |c| {
        for n in 1..=4 {
            for variant in [WeilVariant::WO, WeilVariant::WSO] {
                let w = WeilComplex::new(n, variant).expect("n ≤ 4");
                for k in 1..w.top_degree() {
                    c.record(w.d_matrix(k).mul(&w.d_matrix(k - 1)).is_zero(), || format!("{variant:?}({n}) degree {k}"));
                }
                c.record(w.d(&w.generator_h(1)) == w.generator_c(1), || format!("{variant:?}({n}): dh1 ≠ c1"));
            }
        }
    }));
    out.push(timed("cohomology/pontryagin-classes", "p_i = c_2i are nontrivial cocycles for n ≤ 4", |c| {
        for n in 1..=4 {
            let w = WeilComplex::new(n, WeilVariant::WO).expect("n ≤ 4");
            for i in (1..=n).filter(|i| 2 * i <= n) {
                let p = w.generator_c(2 * i);
                c.record(w.d(&p).is_zero() && !w.is_exact(&p, 4 * i), || format!("p{i} in WO({n})"));
            }
        }
    }));
    out.push(timed("cohomology/affine-modular", "affine algebra with C_δ: 2-cycle X∧Y, no 0-cycles", |c| {
        let aff = FiniteLieAlgebra::affine();
        let h = aff.homology(Coefficients::Character);
        c.record(h.betti == vec![0, 1, 1], || format!("betti {:?}", h.betti));
        c.record(h.cycles[0].is_empty(), || "nonzero 0-cycle".into());
        let xy: Vec<&Vec<usize>> = h.cycles[2].iter().flat_map(|z| z.keys()).collect();
        c.record(h.cycles[2].len() == 1 && xy == vec![&vec![0, 1]], || format!("2-cycles {:?}", h.cycles[2]));
        let delta = aff.character().expect("affine character").to_vec();
        c.record(aff.boundary(&Wedge::basis(vec![0, 1]), Some(&delta)).is_zero(), || "∂(X∧Y) ≠ 0".into());
    }));
    out.push(timed("cohomology/homology-cohomology-duality", "dim H_k = dim H^k for small Lie algebras", |c| {
        let algebras = [
            FiniteLieAlgebra::abelian(3),
            FiniteLieAlgebra::affine(),
            FiniteLieAlgebra::truncated_vector_fields(1, 4),
            FiniteLieAlgebra::truncated_vector_fields(0, 3),
        ];
        for l in &algebras {
            for coeff in [Coefficients::Trivial, Coefficients::Character] {
                let h = l.homology(coeff).betti;
                let co = l.cohomology_dims(coeff);
                c.record(h == co, || format!("{:?} {coeff:?}: homology {h:?}, cohomology {co:?}", l.names()));
            }
        }
    }));
    out
}

// ---------------------------------------------------------------- appendix

fn appendix_suite(p: &Params) -> Result<Vec<Check>, String> {
    let text = match &p.fixture {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        None => APPENDIX_FIXTURE.to_string(),
    };
    let fixture = parse_fixture(&text).map_err(|e| format!("fixture: {e}"))?;
    let start = Instant::now();
    let report = verify_appendix(&fixture).map_err(|e| format!("fixture: {e}"))?;
    let millis = start.elapsed().as_millis();
    let mut b = Check::new("appendix/b-psi", "b(ψ) equals the printed bψ pattern by pattern");
    b.record(report.b_matches(), || report.to_string());
    let mut big = Check::new("appendix/big-b-psi", "B(ψ) = 0");
    big.record(report.big_b_vanishes(), || format!("B(psi) = {}", report.big_b_psi));
    if report.passed() {
        b.note = Some(report.to_string());
    }
    b.millis = millis;
    big.millis = millis;
    Ok(vec![b, big])
}
