use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use super::{delta_poly_eval, random_jet, AffineElement, DiffeoError, DiffeoJet};
use crate::algebra_kernel::{rat, LinComb, Rational, TruncSeries};
use crate::hopf_h1::{is_delta_polynomial, HElement};

/// `f(y, x) = Σ c y^i x^j`, Laurent in `y`, known in `x` through `x^prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiberFunction {
    terms: LinComb<(i32, u32)>,
    prec: u32,
}

impl FiberFunction {
    pub fn zero(prec: u32) -> Self {
        FiberFunction { terms: LinComb::zero(), prec }
    }

    pub fn constant(c: Rational, prec: u32) -> Self {
        Self::monomial(0, 0, c, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::constant(Rational::one(), prec)
    }

    /// `c y^i x^j`.
    pub fn monomial(i: i32, j: u32, c: Rational, prec: u32) -> Self {
        Self::from_terms([((i, j), c)], prec)
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, u32), Rational)>>(terms: I, prec: u32) -> Self {
        FiberFunction { terms: LinComb::from_terms(terms).filter(|&(_, j)| j <= prec), prec }
    }

    /// `y^i · s(x)`.
    pub fn from_series(i: i32, s: &TruncSeries) -> Self {
        let prec = s.order() as u32;
        Self::from_terms(s.coeffs().iter().enumerate().map(|(j, c)| ((i, j as u32), c.clone())), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn terms(&self) -> &LinComb<(i32, u32)> {
        &self.terms
    }

    pub fn coeff(&self, i: i32, j: u32) -> Rational {
        self.terms.coeff(&(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn truncate(&self, prec: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.clone())), prec.min(self.prec))
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        FiberFunction { terms: &self.terms + &other.terms, prec }.truncate(prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        FiberFunction { terms: self.terms.scale(s), prec: self.prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let terms = self.terms.bilinear(&other.terms, |&(i, j), &(k, l)| {
            if j + l <= prec {
                LinComb::basis((i + k, j + l))
            } else {
                LinComb::zero()
            }
        });
        FiberFunction { terms, prec }
    }

    /// `y ∂_x`, the horizontal field X; loses one order of precision.
    pub fn x_derivation(&self) -> Self {
        let prec = self.prec.saturating_sub(1);
        let terms = self
            .terms
            .iter()
            .filter(|((_, j), _)| *j > 0)
            .map(|(&(i, j), c)| ((i + 1, j - 1), c * Rational::from_integer(j.into())));
        Self::from_terms(terms, prec)
    }

    /// `y ∂_y`, which is `Y = −∂_s` under `y = e^{−s}`.
    pub fn y_derivation(&self) -> Self {
        let terms = self.terms.iter().map(|(&(i, j), c)| ((i, j), c * Rational::from_integer(i.into())));
        Self::from_terms(terms, self.prec)
    }

    /// `f ∘ ψ̃` with `ψ̃(y, x) = (ψ'(x) y, ψ(x))`.
    pub fn lift_compose(&self, p: &DiffeoJet) -> Self {
        let n = p.order() as u32;
        let has_y = self.terms.keys().any(|&(i, _)| i != 0);
        let prec = self.prec.min(if has_y { n.saturating_sub(1) } else { n });
        let ord = prec as usize;
        let psi = p.series().truncate(ord);
        let dpsi = p.series().derivative().truncate(ord);
        let mut psi_pows: BTreeMap<u32, TruncSeries> = BTreeMap::new();
        let mut dpsi_pows: BTreeMap<i32, TruncSeries> = BTreeMap::new();
        let mut out = Self::zero(prec);
        for (&(i, j), c) in &self.terms {
            let a = psi_pows.entry(j).or_insert_with(|| psi.powi(j as i64).expect("nonnegative power")).clone();
            let s = if i == 0 {
                a.scale(c)
            } else {
                let b = dpsi_pows.entry(i).or_insert_with(|| dpsi.powi(i as i64).expect("ψ'(0) = 1"));
                (&a * &*b).scale(c)
            };
            out = out.add(&Self::from_series(i, &s).truncate(prec));
        }
        out
    }

    /// Value at `y`, `x`, reading the stored terms as a polynomial.
    pub fn eval(&self, y: &Rational, x: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (&(i, j), c) in &self.terms {
            let yi = if i >= 0 { pow(y, i as u32) } else { pow(&y.recip(), i.unsigned_abs()) };
            total += c * yi * pow(x, j);
        }
        total
    }

    /// Equality of all coefficients both sides know.
    pub fn agrees(&self, other: &Self) -> bool {
        let p = self.prec.min(other.prec);
        self.truncate(p).terms == other.truncate(p).terms
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

impl fmt::Debug for FiberFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self, self.prec + 1)
    }
}

impl fmt::Display for FiberFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<(&Rational, String)> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let mut parts = Vec::new();
                match i {
                    0 => {}
                    1 => parts.push("y".to_string()),
                    _ => parts.push(format!("y^{i}")),
                }
                match j {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    _ => parts.push(format!("x^{j}")),
                }
                (c, parts.join(" "))
            })
            .collect();
        crate::algebra_kernel::write_terms(f, items.into_iter())
    }
}

/// `Σ f_ψ · U*_ψ`, one fiber function per jet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossedElement {
    order: usize,
    terms: BTreeMap<DiffeoJet, FiberFunction>,
}

impl CrossedElement {
    pub fn zero(order: usize) -> Self {
        CrossedElement { order, terms: BTreeMap::new() }
    }

    /// `f · U*_ψ`.
    pub fn term(f: FiberFunction, psi: DiffeoJet) -> Self {
        let order = psi.order();
        let mut out = Self::zero(order);
        out.terms.insert(psi, f);
        out
    }

    /// `f · U_φ = f · U*_{φ⁻¹}`.
    pub fn with_forward(f: FiberFunction, phi: &DiffeoJet) -> Result<Self, DiffeoError> {
        Ok(Self::term(f, super::jet_invert(phi)?))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffeoJet, &FiberFunction)> {
        self.terms.iter()
    }

    pub fn fiber(&self, psi: &DiffeoJet) -> Option<&FiberFunction> {
        self.terms.get(psi)
    }

    fn insert_add(&mut self, psi: DiffeoJet, f: FiberFunction) {
        match self.terms.get_mut(&psi) {
            Some(g) => *g = g.add(&f),
            None => {
                self.terms.insert(psi, f);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, DiffeoError> {
        if self.order != other.order {
            return Err(DiffeoError::OrderMismatch(self.order, other.order));
        }
        let mut out = self.clone();
        for (psi, f) in &other.terms {
            out.insert_add(psi.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        CrossedElement {
            order: self.order,
            terms: self.terms.iter().map(|(p, f)| (p.clone(), f.scale(s))).collect(),
        }
    }

    /// `f₁U*_{ψ₁} · f₂U*_{ψ₂} = f₁ (f₂ ∘ ψ̃₁) U*_{ψ₂ ∘ ψ₁}`.
    pub fn mul(&self, other: &Self) -> Result<Self, DiffeoError> {
        if self.order != other.order {
            return Err(DiffeoError::OrderMismatch(self.order, other.order));
        }
        let mut out = Self::zero(self.order);
        for (p1, f1) in &self.terms {
            for (p2, f2) in &other.terms {
                let f = f1.mul(&f2.lift_compose(p1));
                out.insert_add(super::jet_compose(p2, p1)?, f);
            }
        }
        Ok(out)
    }

    /// Apply a fiber operator to every term.
    pub fn map_fibers<F: FnMut(&DiffeoJet, &FiberFunction) -> FiberFunction>(&self, mut op: F) -> Self {
        CrossedElement {
            order: self.order,
            terms: self.terms.iter().map(|(p, f)| (p.clone(), op(p, f))).collect(),
        }
    }

    /// Lowest precision among the fibers.
    pub fn prec(&self) -> Option<u32> {
        self.terms.values().map(FiberFunction::prec).min()
    }

    /// Equality of every coefficient both sides know.
    pub fn agrees(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<&DiffeoJet> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| {
            let zero = FiberFunction::zero(u32::MAX);
            let a = self.terms.get(k).unwrap_or(&zero);
            let b = other.terms.get(k).unwrap_or(&zero);
            a.agrees(b)
        })
    }
}

/// `γ_n(y, x) = yⁿ ∂_xⁿ log ψ'(x)`, the multiplier of δ_n on `f·U*_ψ`.
pub fn gamma(p: &DiffeoJet, n: u32) -> Result<FiberFunction, DiffeoError> {
    if n as usize + 1 > p.order() {
        return Err(DiffeoError::BeyondTruncation(n, n as usize + 1, p.order()));
    }
    let mut s = p.log_derivative();
    for _ in 0..n {
        s = s.derivative();
    }
    Ok(FiberFunction::from_series(n as i32, &s))
}

/// The action of H(1): `Y = y∂_y`, `X = y∂_x`, δ_n multiplies by γ_n; a PBW monomial
/// `δ^a X^b Y^c` acts by composing right to left.
pub fn hopf_act(h: &HElement, u: &CrossedElement) -> Result<CrossedElement, DiffeoError> {
    let mut out = CrossedElement::zero(u.order());
    for (m, c) in h {
        let mut v = u.clone();
        for _ in 0..m.y {
            v = v.map_fibers(|_, f| f.y_derivation());
        }
        for _ in 0..m.x {
            v = v.map_fibers(|_, f| f.x_derivation());
        }
        for n in m.delta.factors() {
            let mut err = None;
            v = v.map_fibers(|p, f| match gamma(p, n) {
                Ok(g) => g.mul(f),
                Err(e) => {
                    err = Some(e);
                    f.clone()
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        out = out.add(&v.scale(c))?;
    }
    Ok(out)
}

/// `⟨h X_k, Σ f U*_ψ⟩ = Σ h(ψ) f(k)` with `k = (a, b)` read as `y = a`, `x = b`.
pub fn pair_crossed(h: &HElement, k: &AffineElement, u: &CrossedElement) -> Result<Rational, DiffeoError> {
    if !is_delta_polynomial(h) {
        return Err(DiffeoError::NotDeltaPolynomial);
    }
    let mut total = Rational::zero();
    for (p, f) in u.terms() {
        total += delta_poly_eval(h, p)? * f.eval(&k.a, &k.b);
    }
    Ok(total)
}

/// A fiber function with a few random terms, `y`-exponents in `-2..=2`.
pub fn random_fiber<R: Rng>(rng: &mut R, prec: u32, terms: usize) -> FiberFunction {
    let t: Vec<((i32, u32), Rational)> = (0..terms)
        .map(|_| ((rng.gen_range(-2..=2), rng.gen_range(0..=prec.min(4))), rat(rng.gen_range(-4..=4), rng.gen_range(1..=2))))
        .collect();
    FiberFunction::from_terms(t, prec)
}

/// A sum of `terms` random `f·U*_ψ`.
pub fn random_crossed<R: Rng>(rng: &mut R, order: usize, terms: usize) -> CrossedElement {
    let mut out = CrossedElement::zero(order);
    for _ in 0..terms {
        let psi = if rng.gen_bool(0.25) { DiffeoJet::identity(order) } else { random_jet(rng, order) };
        let f = random_fiber(rng, order as u32, 2);
        out = out.add(&CrossedElement::term(f, psi)).expect("same order");
    }
    out
}
