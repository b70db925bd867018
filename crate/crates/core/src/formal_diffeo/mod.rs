//! Jets of formal diffeomorphisms and the crossed product they act on.
//!
//! A [`DiffeoJet`] of order `N` is `ψ(x) = x + c₂x² + … + c_N x^N` known modulo
//! `x^{N+1}`. The crossed product is modelled by finite sums `Σ f·U*_ψ` where the
//! fiber function `f(y, x)` is a Laurent polynomial in `y` and a truncated
//! polynomial in `x` with an explicit precision. `U*_ψ` is contravariant, so the
//! element written `f·U_φ` elsewhere is `f·U*_{φ⁻¹}` here.

mod crossed;
mod expansional;

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra_kernel::{factorial, int, rat, Rational, SeriesError, TruncSeries};
use crate::hopf_h1::{is_delta_polynomial, HElement};

pub use crossed::{gamma, hopf_act, pair_crossed, random_crossed, random_fiber, CrossedElement, FiberFunction};
pub use expansional::{expansional_closed_form, expansional_product, expansional_terms};

pub const DEFAULT_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffeoError {
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("jet must satisfy ψ(0) = 0 and ψ'(0) = 1")]
    NotTangentToIdentity,
    #[error("δ_{0} needs a jet of order at least {1}, found {2}")]
    BeyondTruncation(u32, usize, usize),
    #[error("affine scale must be positive")]
    NonPositiveScale,
    #[error("ψ'(b) vanishes; the right action is undefined")]
    DegenerateAction,
    #[error("δ-polynomial expected, found X or Y")]
    NotDeltaPolynomial,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A jet `ψ` of a diffeomorphism with `ψ(0) = 0`, `ψ'(0) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DiffeoJet {
    series: TruncSeries,
}

impl DiffeoJet {
    pub fn new(series: TruncSeries) -> Result<Self, DiffeoError> {
        if !series.coeff(0).is_zero() || (series.order() >= 1 && !series.coeff(1).is_one()) {
            return Err(DiffeoError::NotTangentToIdentity);
        }
        Ok(DiffeoJet { series })
    }

    /// `x + Σ c_k x^k` from the coefficients `c₂, c₃, …`.
    pub fn from_higher(coeffs: &[Rational], order: usize) -> Self {
        let mut c = vec![Rational::zero(), Rational::one()];
        c.extend_from_slice(coeffs);
        DiffeoJet { series: TruncSeries::new(c, order) }
    }

    pub fn identity(order: usize) -> Self {
        DiffeoJet { series: TruncSeries::identity(order) }
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    pub fn is_identity(&self) -> bool {
        self.series == TruncSeries::identity(self.order())
    }

    /// `log ψ'`, known through order `N − 1`.
    pub fn log_derivative(&self) -> TruncSeries {
        self.series.derivative().log().expect("ψ'(0) = 1")
    }

    /// `g = ψ''/ψ'`, the derivative of `log ψ'`.
    pub fn log_derivative_slope(&self) -> TruncSeries {
        self.log_derivative().derivative()
    }
}

/// `p ∘ q`.
pub fn jet_compose(p: &DiffeoJet, q: &DiffeoJet) -> Result<DiffeoJet, DiffeoError> {
    if p.order() != q.order() {
        return Err(DiffeoError::OrderMismatch(p.order(), q.order()));
    }
    Ok(DiffeoJet { series: p.series.compose(&q.series)? })
}

pub fn jet_invert(p: &DiffeoJet) -> Result<DiffeoJet, DiffeoError> {
    Ok(DiffeoJet { series: p.series.reverse()? })
}

/// `δ_n(ψ) = (log ψ')^{(n)}(0)`.
pub fn delta_coords(p: &DiffeoJet, n: u32) -> Result<Rational, DiffeoError> {
    if n as usize + 1 > p.order() {
        return Err(DiffeoError::BeyondTruncation(n, n as usize + 1, p.order()));
    }
    Ok(p.log_derivative().coeff(n as usize) * Rational::from_integer(factorial(n as u64)))
}

/// Evaluate a δ-polynomial at the coordinates `δ_n(ψ)`.
pub fn delta_poly_eval(h: &HElement, p: &DiffeoJet) -> Result<Rational, DiffeoError> {
    if !is_delta_polynomial(h) {
        return Err(DiffeoError::NotDeltaPolynomial);
    }
    let mut total = Rational::zero();
    for (m, c) in h {
        let mut v = c.clone();
        for n in m.delta.factors() {
            v *= delta_coords(p, n)?;
        }
        total += v;
    }
    Ok(total)
}

/// The affine map `x ↦ a x + b`, `a > 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineElement {
    pub a: Rational,
    pub b: Rational,
}

impl AffineElement {
    pub fn new(a: Rational, b: Rational) -> Result<Self, DiffeoError> {
        if a <= Rational::zero() {
            return Err(DiffeoError::NonPositiveScale);
        }
        Ok(AffineElement { a, b })
    }

    pub fn identity() -> Self {
        AffineElement { a: Rational::one(), b: Rational::zero() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement { a: &self.a * &other.a, b: &self.a * &other.b + &self.b }
    }

    pub fn inverse(&self) -> AffineElement {
        let ai = self.a.recip();
        AffineElement { b: -(&self.b * &ai), a: ai }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.a * x + &self.b
    }
}

/// `(ψ·k)(x) = (ψ(ax+b) − ψ(b)) / (ψ'(b) a)`, reading the stored jet as a polynomial.
pub fn g1_right_action(p: &DiffeoJet, k: &AffineElement) -> Result<DiffeoJet, DiffeoError> {
    let n = p.order();
    let lin = TruncSeries::new(vec![k.b.clone(), k.a.clone()], n);
    let mut acc = TruncSeries::zero(n);
    for c in p.series.coeffs().iter().rev() {
        acc = &acc * &lin;
        acc = &acc + &TruncSeries::constant(c.clone(), n);
    }
    let slope = p.series.derivative().eval(&k.b) * &k.a;
    if slope.is_zero() {
        return Err(DiffeoError::DegenerateAction);
    }
    let shifted = &acc - &TruncSeries::constant(acc.coeff(0), n);
    Ok(DiffeoJet { series: shifted.scale(&slope.recip()) })
}

/// `∂/∂b` of `ψ·(1, b)` at `b = 0`, computed over dual numbers `b = ε`, `ε² = 0`:
/// `ψ(x+ε) − ψ(ε) = ψ + ε(ψ' − 1)` and `1/ψ'(ε) = 1 − εψ''(0)`. Known through order `N − 1`.
pub fn g1_translation_tangent(p: &DiffeoJet) -> TruncSeries {
    let d = p.series.derivative();
    let n = d.order();
    let second = p.series.coeff(2) * int(2);
    let psi = p.series.truncate(n);
    &(&d - &TruncSeries::one(n)) - &psi.scale(&second)
}

/// `∂/∂b δ_n(ψ·(1, b))` at `b = 0`, from the tangent jet: the variation of `log ψ'` is `D'/ψ'`.
pub fn delta_coords_translation_derivative(p: &DiffeoJet, n: u32) -> Result<Rational, DiffeoError> {
    if n as usize + 2 > p.order() {
        return Err(DiffeoError::BeyondTruncation(n, n as usize + 2, p.order()));
    }
    let d = g1_translation_tangent(p).derivative();
    let var = &d * &p.series.derivative().truncate(d.order()).inverse()?;
    Ok(var.coeff(n as usize) * Rational::from_integer(factorial(n as u64)))
}

/// A jet with small random rational coefficients `c₂, …, c_N`.
pub fn random_jet<R: Rng>(rng: &mut R, order: usize) -> DiffeoJet {
    let coeffs: Vec<Rational> =
        (2..=order).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect();
    DiffeoJet::from_higher(&coeffs, order)
}
