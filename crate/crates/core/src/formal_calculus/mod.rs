//! A formal calculus for cochains of the form
//! `(a⁰, …, aⁿ) ↦ τ(w₀(a⁰) w₁(a¹) ⋯ wₙ(aⁿ))`, where each `w_i` is a word in the
//! derivations ∂_α, ∂_s and δ₁ and τ is an invariant trace known only through its rules.
//!
//! Rules:
//! - `τ(∂_α a) = 0` and `τ(δ₁ a) = 0`;
//! - `τ(∂_s a) = −τ(a)`. This is `τ(Y a) = δ(Y) τ(a)` with `δ(Y) = 1` and `Y = −∂_s`;
//! - `[∂_α, ∂_s] = 0`, `[∂_α, δ₁] = 0` and `[∂_s, δ₁] = −δ₁`, from `[Y, δ₁] = δ₁`.
//!
//! A word is kept as `δ₁^u ∂_α^p ∂_s^q` with δ₁ outermost. The marker `u` of a pattern
//! such as `(us, α, s)` stands for ∂_u with `⟨∂_u a, b⟩ = τ(δ₁(a) b)`. Because ∂_u
//! commutes with ∂_α and ∂_s, a u-word always means δ₁ applied after the other letters,
//! wherever `u` is written. At most one u occurs per pattern.
//!
//! The canonical form has an empty word in slot 0. Integration by parts moves every
//! derivation off slot 0. The trace property is used only for the cyclic face and for
//! rotations; patterns are never identified up to rotation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra_kernel::{binomial, int, rat, LinComb, Rational};

mod fixture;

pub use fixture::{
    parse_fixture, solve_primitive, verify_appendix, write_fixture, AppendixReport, Fixture, PatternDiff, APPENDIX_FIXTURE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormalError {
    #[error("a pattern may carry at most one u marker")]
    TwoUMarkers,
    #[error("unknown letter `{0}` in a derivation word")]
    BadLetter(char),
    #[error("cochains of arity {0} and {1} cannot be combined")]
    ArityMismatch(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// `δ₁^u ∂_α^p ∂_s^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DerivWord {
    pub u: bool,
    pub p: u32,
    pub q: u32,
}

impl DerivWord {
    pub const EMPTY: DerivWord = DerivWord { u: false, p: 0, q: 0 };

    pub fn new(u: bool, p: u32, q: u32) -> Self {
        DerivWord { u, p, q }
    }

    pub fn is_empty(&self) -> bool {
        !self.u && self.p == 0 && self.q == 0
    }

    /// Letters `a` (∂_α), `s` (∂_s), `u` in any order; the empty string is the empty word.
    pub fn parse(text: &str) -> Result<Self, FormalError> {
        let mut w = DerivWord::EMPTY;
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                'a' => w.p += 1,
                's' => w.q += 1,
                'u' if w.u => return Err(FormalError::TwoUMarkers),
                'u' => w.u = true,
                c => return Err(FormalError::BadLetter(c)),
            }
        }
        Ok(w)
    }

    /// `∂_α ∘ w`.
    fn after_alpha(self) -> Self {
        DerivWord { p: self.p + 1, ..self }
    }

    /// `∂_s ∘ w = δ₁^u ∂_α^p ∂_s^{q+1} − u · w`.
    fn after_s(self) -> Vec<(DerivWord, Rational)> {
        let mut out = vec![(DerivWord { q: self.q + 1, ..self }, int(1))];
        if self.u {
            out.push((self, int(-1)));
        }
        out
    }

    /// `δ₁ ∘ w`, defined when `w` has no u.
    fn after_delta(self) -> Result<Self, FormalError> {
        if self.u {
            return Err(FormalError::TwoUMarkers);
        }
        Ok(DerivWord { u: true, ..self })
    }

    /// Leibniz rule: `w(xy) = Σ c · (w' x)(w'' y)`.
    fn leibniz(self) -> Vec<(DerivWord, DerivWord, Rational)> {
        let mut out = Vec::new();
        let us: &[(bool, bool)] = if self.u { &[(true, false), (false, true)] } else { &[(false, false)] };
        for &(u1, u2) in us {
            for i in 0..=self.p {
                for j in 0..=self.q {
                    let c = Rational::from_integer(binomial(self.p as u64, i as u64) * binomial(self.q as u64, j as u64));
                    out.push((DerivWord::new(u1, i, j), DerivWord::new(u2, self.p - i, self.q - j), c));
                }
            }
        }
        out
    }
}

impl fmt::Display for DerivWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u {
            write!(f, "u")?;
        }
        for _ in 0..self.p {
            write!(f, "a")?;
        }
        for _ in 0..self.q {
            write!(f, "s")?;
        }
        Ok(())
    }
}

/// One word per argument slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(pub Vec<DerivWord>);

impl Pattern {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn u_count(&self) -> usize {
        self.0.iter().filter(|w| w.u).count()
    }

    /// Words in slots 1.. joined as in the printed notation, e.g. `(us,a,s)`.
    pub fn paper_notation(&self) -> String {
        let rest: Vec<String> = self.0[1..].iter().map(|w| w.to_string()).collect();
        if self.0[0].is_empty() {
            format!("({})", rest.join(","))
        } else {
            format!("[{}]({})", self.0[0], rest.join(","))
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", words.join(" | "))
    }
}

/// A linear combination of patterns of a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCochain {
    arity: usize,
    terms: LinComb<Pattern>,
}

impl FormalCochain {
    pub fn zero(arity: usize) -> Self {
        FormalCochain { arity, terms: LinComb::zero() }
    }

    pub fn from_terms(arity: usize, terms: Vec<(Pattern, Rational)>) -> Result<Self, FormalError> {
        let mut c = Self::zero(arity);
        for (p, k) in terms {
            c.add_term(p, k)?;
        }
        Ok(c)
    }

    pub fn add_term(&mut self, p: Pattern, c: Rational) -> Result<(), FormalError> {
        if p.arity() != self.arity {
            return Err(FormalError::ArityMismatch(self.arity, p.arity()));
        }
        if p.u_count() > 1 {
            return Err(FormalError::TwoUMarkers);
        }
        self.terms.add_term(p, c);
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &LinComb<Pattern> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, p: &Pattern) -> Rational {
        self.terms.coeff(p)
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormalError> {
        if self.arity != other.arity {
            return Err(FormalError::ArityMismatch(self.arity, other.arity));
        }
        let mut terms = self.terms.clone();
        terms.add_scaled(&other.terms, &Rational::one());
        Ok(FormalCochain { arity: self.arity, terms })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FormalCochain { arity: self.arity, terms: self.terms.scale(c) }
    }

    pub fn is_normalized(&self) -> bool {
        self.terms.keys().all(|p| p.0[0].is_empty())
    }
}

impl fmt::Display for FormalCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sign}{} {}", c.abs(), p.paper_notation())?;
        }
        Ok(())
    }
}

/// Which derivation to integrate by parts first when slot 0 carries several.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Delta,
    Alpha,
    S,
}

/// One integration-by-parts step on slot 0, removing `letter` from `w₀`.
fn peel(p: &Pattern, letter: Letter) -> Result<Vec<(Pattern, Rational)>, FormalError> {
    let w0 = p.0[0];
    let mut out = Vec::new();
    let mut with_slot = |i: usize, w: DerivWord, inner: DerivWord, c: Rational| {
        let mut words = p.0.clone();
        words[0] = inner;
        words[i] = w;
        out.push((Pattern(words), c));
    };
    match letter {
        Letter::Delta => {
            // τ((δ₁X)W) = −Σ_i τ(X ⋯ δ₁w_i ⋯)
            let inner = DerivWord { u: false, ..w0 };
            for i in 1..p.arity() {
                with_slot(i, p.0[i].after_delta()?, inner, int(-1));
            }
        }
        Letter::Alpha => {
            let inner = DerivWord { p: w0.p - 1, ..w0 };
            for i in 1..p.arity() {
                with_slot(i, p.0[i].after_alpha(), inner, int(-1));
            }
        }
        Letter::S => {
            // w₀ = ∂_s∘w' + u·w' with w' = δ₁^u ∂_α^p ∂_s^{q−1};
            // τ((∂_s X)W) = −τ(XW) − Σ_i τ(X ⋯ ∂_s w_i ⋯)
            let inner = DerivWord { q: w0.q - 1, ..w0 };
            let own = if w0.u { int(0) } else { int(-1) };
            if !own.is_zero() {
                with_slot(0, inner, inner, own);
            }
            for i in 1..p.arity() {
                for (w, c) in p.0[i].after_s() {
                    with_slot(i, w, inner, -c);
                }
            }
        }
    }
    Ok(out)
}

fn letters(w: DerivWord) -> Vec<Letter> {
    let mut v = Vec::new();
    if w.u {
        v.push(Letter::Delta);
    }
    if w.p > 0 {
        v.push(Letter::Alpha);
    }
    if w.q > 0 {
        v.push(Letter::S);
    }
    v
}

fn normalize_by<F: FnMut(&[Letter]) -> Letter>(c: &FormalCochain, mut choose: F) -> Result<FormalCochain, FormalError> {
    if c.arity == 0 {
        return Ok(c.clone());
    }
    let mut done = LinComb::zero();
    let mut work: Vec<(Pattern, Rational)> = c.terms.iter().map(|(p, k)| (p.clone(), k.clone())).collect();
    while let Some((p, k)) = work.pop() {
        if p.u_count() > 1 {
            return Err(FormalError::TwoUMarkers);
        }
        if p.0[0].is_empty() {
            done.add_term(p, k);
            continue;
        }
        let letter = choose(&letters(p.0[0]));
        for (q, c2) in peel(&p, letter)? {
            work.push((q, c2 * &k));
        }
    }
    Ok(FormalCochain { arity: c.arity, terms: done })
}

/// Integrate by parts until every slot-0 word is empty; peels δ₁, then ∂_α, then ∂_s.
pub fn normalize(c: &FormalCochain) -> Result<FormalCochain, FormalError> {
    normalize_by(c, |ls| ls[0])
}

/// As [`normalize`] but peeling the slot-0 letters in a random order.
pub fn normalize_random<R: Rng>(c: &FormalCochain, rng: &mut R) -> Result<FormalCochain, FormalError> {
    normalize_by(c, |ls| ls[rng.gen_range(0..ls.len())])
}

/// Hochschild coboundary
/// `(bφ)(a⁰,…,a^{n+1}) = Σ_{i≤n} (−1)^i φ(…, a^i a^{i+1}, …) + (−1)^{n+1} φ(a^{n+1}a⁰, a¹, …, aⁿ)`,
/// with every word expanded by the Leibniz rule; the result is normalized.
pub fn b_cochain(c: &FormalCochain) -> Result<FormalCochain, FormalError> {
    let c = normalize(c)?;
    let m = c.arity;
    if m == 0 {
        return Ok(FormalCochain::zero(1));
    }
    let n = m - 1;
    let mut out = FormalCochain::zero(m + 1);
    for (p, k) in &c.terms {
        for i in 0..=n {
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            for (w1, w2, c2) in p.0[i].leibniz() {
                let mut words = p.0[..i].to_vec();
                words.push(w1);
                words.push(w2);
                words.extend_from_slice(&p.0[i + 1..]);
                out.terms.add_term(Pattern(words), k * &sign * c2);
            }
        }
        let sign = if (n + 1) % 2 == 0 { int(1) } else { int(-1) };
        for (w_last, w_first, c2) in p.0[0].leibniz() {
            let mut words = vec![w_first];
            words.extend_from_slice(&p.0[1..]);
            words.push(w_last);
            out.terms.add_term(Pattern(words), k * &sign * c2);
        }
    }
    normalize(&out)
}

/// `λ φ(a⁰,…,a^{m−1}) = (−1)^{m−1} φ(a^{m−1}, a⁰, …, a^{m−2})` on patterns of arity m.
pub fn signed_rotation(c: &FormalCochain) -> Result<FormalCochain, FormalError> {
    let m = c.arity;
    if m == 0 {
        return Ok(c.clone());
    }
    let sign = if (m - 1) % 2 == 0 { int(1) } else { int(-1) };
    let mut out = FormalCochain::zero(m);
    for (p, k) in &c.terms {
        let mut words = p.0[1..].to_vec();
        words.push(p.0[0]);
        out.terms.add_term(Pattern(words), k * &sign);
    }
    normalize(&out)
}

/// Connes' `B = A∘B₀` with `B₀φ(a⁰,…,a^{n−1}) = φ(1, a⁰, …) − (−1)^n φ(a⁰, …, a^{n−1}, 1)`
/// for a cochain of arity `n + 1`, using a formal unit killed by every derivation.
pub fn big_b_cochain(c: &FormalCochain) -> Result<FormalCochain, FormalError> {
    let c = normalize(c)?;
    let m = c.arity;
    if m <= 1 {
        return Ok(FormalCochain::zero(m.saturating_sub(1)));
    }
    let n = m - 1;
    let mut b0 = FormalCochain::zero(n);
    let last_sign = if n % 2 == 0 { int(-1) } else { int(1) };
    for (p, k) in &c.terms {
        // slot 0 is empty after normalization
        b0.terms.add_term(Pattern(p.0[1..].to_vec()), k.clone());
        if p.0[n].is_empty() {
            b0.terms.add_term(Pattern(p.0[..n].to_vec()), k * &last_sign);
        }
    }
    let b0 = normalize(&b0)?;
    let mut out = FormalCochain::zero(n);
    let mut cur = b0;
    for _ in 0..n {
        out = out.add(&cur)?;
        cur = signed_rotation(&cur)?;
    }
    Ok(out)
}

/// Random cochain of the given arity with at most one u among its patterns' words.
pub fn random_cochain<R: Rng>(rng: &mut R, arity: usize, terms: usize, max_letters: u32) -> FormalCochain {
    let mut c = FormalCochain::zero(arity);
    for _ in 0..terms {
        let u_slot = if rng.gen_bool(0.5) && arity > 0 { Some(rng.gen_range(0..arity)) } else { None };
        let words = (0..arity)
            .map(|i| DerivWord::new(u_slot == Some(i), rng.gen_range(0..=max_letters), rng.gen_range(0..=max_letters)))
            .collect();
        let k = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        c.add_term(Pattern(words), k).expect("valid random pattern");
    }
    c
}

/// Group a cochain's coefficients by pattern, dropping zeros.
pub fn coefficient_map(c: &FormalCochain) -> BTreeMap<Pattern, Rational> {
    c.terms.iter().filter(|(_, k)| !k.is_zero()).map(|(p, k)| (p.clone(), k.clone())).collect()
}

/// `(u, Σp, Σq)` of a pattern; `b` preserves it.
pub fn content(p: &Pattern) -> (bool, u32, u32) {
    (p.u_count() > 0, p.0.iter().map(|w| w.p).sum(), p.0.iter().map(|w| w.q).sum())
}

/// All canonical patterns of the given arity and content.
pub fn patterns_with_content(arity: usize, u: bool, p: u32, q: u32) -> Vec<Pattern> {
    fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
        if parts == 0 {
            return if total == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        (0..=total)
            .flat_map(|first| {
                compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    if arity == 0 {
        return Vec::new();
    }
    let slots = arity - 1;
    let u_slots: Vec<Option<usize>> = if u { (1..=slots).map(Some).collect() } else { vec![None] };
    let mut out = Vec::new();
    for us in u_slots {
        for ps in compositions(p, slots) {
            for qs in compositions(q, slots) {
                let mut words = vec![DerivWord::EMPTY];
                words.extend((0..slots).map(|i| DerivWord::new(us == Some(i + 1), ps[i], qs[i])));
                out.push(Pattern(words));
            }
        }
    }
    out
}
