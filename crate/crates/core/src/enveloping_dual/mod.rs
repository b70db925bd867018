//! The enveloping algebra of formal vector fields `Z_k = x^{k+1}/(k+1)! ∂`
//! (k ≥ −1), truncated at level n by `Z_k = 0` for `k > n`, and its pairing
//! with the δ-subalgebra of H(1).
//!
//! Internally elements are stored over the primed generators
//! `Z'_k = (k+1)! Z_k = x^{k+1}∂`, whose bracket is `[Z'_k, Z'_l] = (l−k) Z'_{k+l}`.
//! All public constructors and accessors speak the unprimed `Z_k`.
//!
//! Truncation is an ideal only inside 𝔞¹ (indices ≥ 1). Computations that
//! involve `Z₀` or `Z₋₁` (ad Z₋₁, the pairing) lift their input to a level
//! at least its weight so the cut never fires.

mod pairing;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::algebra_kernel::{binomial, factorial, int, LinComb, Rational};

pub use pairing::{gram_matrix, pair, pair_delta, rho_map, u_monomials_of_weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopingError {
    #[error("truncation levels differ ({0} vs {1})")]
    LevelMismatch(u32, u32),
    #[error("generator Z_{0} lies above truncation level {1}")]
    AboveLevel(i32, u32),
    #[error("element has Z_0 or Z_-1 factors; expected an element of U(a^1)")]
    NotInA1,
    #[error("δ-polynomial expected, found X or Y")]
    NotDeltaPolynomial,
}

/// Exponents of `Z_N^{a_N} ··· Z₁^{a₁} Z₀^{a₀} Z₋₁^{a₋₁}`; slot `p` holds the exponent of `Z_{p−1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UMonomial(Vec<u32>);

impl UMonomial {
    pub fn one() -> Self {
        UMonomial(Vec::new())
    }

    fn from_slots(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        UMonomial(v)
    }

    /// Monomial of 𝔞¹ from exponents `(a₁, a₂, …)`.
    pub fn from_a1_exponents(a: &[u32]) -> Self {
        let mut v = vec![0, 0];
        v.extend_from_slice(a);
        Self::from_slots(v)
    }

    pub fn from_pairs(pairs: &[(i32, u32)]) -> Self {
        let mut v = Vec::new();
        for &(k, e) in pairs {
            assert!(k >= -1, "generators start at Z_-1");
            let p = (k + 1) as usize;
            if v.len() <= p {
                v.resize(p + 1, 0);
            }
            v[p] += e;
        }
        Self::from_slots(v)
    }

    pub fn generator(k: i32) -> Self {
        Self::from_pairs(&[(k, 1)])
    }

    pub fn exponent(&self, k: i32) -> u32 {
        self.0.get((k + 1) as usize).copied().unwrap_or(0)
    }

    /// `(index, exponent)` pairs with positive exponent, increasing index.
    pub fn factors(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(p, e)| (p as i32 - 1, *e))
    }

    /// Exponents `(a₁, …, a_N)` of the 𝔞¹ part.
    pub fn a1_exponents(&self) -> Vec<u32> {
        self.0.iter().skip(2).copied().collect()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_a1(&self) -> bool {
        self.exponent(0) == 0 && self.exponent(-1) == 0
    }

    pub fn weight(&self) -> i32 {
        self.factors().map(|(k, e)| k * e as i32).sum()
    }

    pub fn max_index(&self) -> Option<i32> {
        self.factors().map(|(k, _)| k).max()
    }

    fn min_index(&self) -> Option<i32> {
        self.factors().map(|(k, _)| k).next()
    }

    /// Letters in canonical (decreasing index) order.
    pub fn word(&self) -> Vec<i32> {
        let mut w = Vec::new();
        for (k, e) in self.factors().collect::<Vec<_>>().into_iter().rev() {
            for _ in 0..e {
                w.push(k);
            }
        }
        w
    }

    /// `Π a_k!`.
    pub fn factorial(&self) -> BigInt {
        self.factors().fold(BigInt::one(), |acc, (_, e)| acc * factorial(e as u64))
    }

    fn bump(&self, k: i32, delta: i32) -> Self {
        let mut v = self.0.clone();
        let p = (k + 1) as usize;
        if v.len() <= p {
            v.resize(p + 1, 0);
        }
        v[p] = (v[p] as i32 + delta) as u32;
        Self::from_slots(v)
    }

    /// `Π ((k+1)!)^{a_k}`: an unprimed monomial equals the primed one divided by this.
    fn prime_factor(&self) -> Rational {
        let mut f = BigInt::one();
        for (k, e) in self.factors() {
            let fk = factorial((k + 1) as u64);
            for _ in 0..e {
                f *= &fk;
            }
        }
        Rational::from_integer(f)
    }
}

impl fmt::Display for UMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|(k, e)| if e == 1 { format!("Z{k}") } else { format!("Z{k}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Element of U(𝔞_n), stored over primed generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UElement {
    level: u32,
    primed: LinComb<UMonomial>,
}

/// Unprimed structure constant: `[Z_k, Z_l] = c · Z_{k+l}` in the untruncated algebra.
pub fn bracket_coefficient(k: i32, l: i32) -> Rational {
    let num = int((l - k) as i64) * Rational::from_integer(factorial((k + l + 1) as u64));
    num / Rational::from_integer(factorial((k + 1) as u64) * factorial((l + 1) as u64))
}

/// The binomial form `C(k+l, l−1) − C(k+l, k−1)` of the same constant, for `k, l ≥ 1`.
pub fn bracket_coefficient_binomial(k: u32, l: u32) -> Rational {
    let n = (k + l) as u64;
    Rational::from_integer(binomial(n, l as u64 - 1) - binomial(n, k as u64 - 1))
}

type MulCache = HashMap<(UMonomial, i32), LinComb<UMonomial>>;

impl UElement {
    pub fn zero(level: u32) -> Self {
        UElement { level, primed: LinComb::zero() }
    }

    pub fn one(level: u32) -> Self {
        Self::scalar(Rational::one(), level)
    }

    pub fn scalar(c: Rational, level: u32) -> Self {
        UElement { level, primed: LinComb::term(UMonomial::one(), c) }
    }

    /// The unprimed generator `Z_k`.
    pub fn z(k: i32, level: u32) -> Result<Self, EnvelopingError> {
        Self::monomial(UMonomial::generator(k), level)
    }

    /// The unprimed PBW monomial.
    pub fn monomial(m: UMonomial, level: u32) -> Result<Self, EnvelopingError> {
        Self::from_unprimed(LinComb::basis(m), level)
    }

    pub fn from_unprimed(terms: LinComb<UMonomial>, level: u32) -> Result<Self, EnvelopingError> {
        for m in terms.keys() {
            if let Some(k) = m.max_index() {
                if k > level as i32 {
                    return Err(EnvelopingError::AboveLevel(k, level));
                }
            }
        }
        let primed = LinComb::from_terms(terms.iter().map(|(m, c)| (m.clone(), c / m.prime_factor())));
        Ok(UElement { level, primed })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Coefficients over unprimed PBW monomials.
    pub fn terms(&self) -> LinComb<UMonomial> {
        LinComb::from_terms(self.primed.iter().map(|(m, c)| (m.clone(), c * m.prime_factor())))
    }

    pub fn coeff(&self, m: &UMonomial) -> Rational {
        self.primed.coeff(m) * m.prime_factor()
    }

    pub fn is_zero(&self) -> bool {
        self.primed.is_zero()
    }

    pub fn in_a1(&self) -> bool {
        self.primed.keys().all(|m| m.in_a1())
    }

    /// Largest weight of a term (0 for scalars and zero).
    pub fn max_weight(&self) -> i32 {
        self.primed.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    /// Same element viewed at a higher truncation level.
    pub fn lift(&self, level: u32) -> Self {
        assert!(level >= self.level, "lift only raises the level");
        UElement { level, primed: self.primed.clone() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UElement { level: self.level, primed: self.primed.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Result<Self, EnvelopingError> {
        check_levels(self, other)?;
        Ok(UElement { level: self.level, primed: &self.primed + &other.primed })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, EnvelopingError> {
        check_levels(self, other)?;
        Ok(UElement { level: self.level, primed: &self.primed - &other.primed })
    }

    pub fn bracket(&self, other: &Self) -> Result<Self, EnvelopingError> {
        u_product(self, other)?.sub(&u_product(other, self)?)
    }
}

fn check_levels(a: &UElement, b: &UElement) -> Result<(), EnvelopingError> {
    if a.level != b.level {
        return Err(EnvelopingError::LevelMismatch(a.level, b.level));
    }
    Ok(())
}

/// `m · Z'_j` in normal order.
fn mul_right(m: &UMonomial, j: i32, level: u32, cache: &mut MulCache) -> LinComb<UMonomial> {
    let low = match m.min_index() {
        Some(low) if low < j => low,
        _ => return LinComb::basis(m.bump(j, 1)),
    };
    let key = (m.clone(), j);
    if let Some(v) = cache.get(&key) {
        return v.clone();
    }
    // m = B Z'_low, and B Z'_low Z'_j = (B Z'_j) Z'_low + (j − low) B Z'_{low+j}
    let b = m.bump(low, -1);
    let mut out = LinComb::zero();
    for (t, c) in &mul_right(&b, j, level, cache) {
        out.add_scaled(&mul_right(t, low, level, cache), c);
    }
    if low + j <= level as i32 {
        out.add_scaled(&mul_right(&b, low + j, level, cache), &int((j - low) as i64));
    }
    cache.insert(key, out.clone());
    out
}

/// Product in U(𝔞_n) reduced to canonical decreasing-index order.
pub fn u_product(u: &UElement, v: &UElement) -> Result<UElement, EnvelopingError> {
    check_levels(u, v)?;
    let mut cache = MulCache::new();
    let mut out = LinComb::zero();
    for (a, c) in &u.primed {
        for (b, d) in &v.primed {
            let mut acc = LinComb::basis(a.clone());
            for j in b.word() {
                let mut next = LinComb::zero();
                for (t, e) in &acc {
                    next.add_scaled(&mul_right(t, j, u.level, &mut cache), e);
                }
                acc = next;
            }
            out.add_scaled(&acc, &(c * d));
        }
    }
    Ok(UElement { level: u.level, primed: out })
}

/// `L₀`: the coefficient of the monomial `Z₀`.
pub fn l0_eval(a: &UElement) -> Rational {
    a.coeff(&UMonomial::generator(0))
}

/// Level large enough that no bracket in ad Z₋₁ computations is cut.
fn safe_level(a: &UElement) -> u32 {
    a.level.max(a.max_weight().max(0) as u32)
}

/// `ad(Z₋₁)(a) = [Z₋₁, a]`.
pub fn ad_z_minus1(a: &UElement) -> UElement {
    let a = a.lift(safe_level(a));
    let z = UElement::z(-1, a.level).expect("Z_-1 exists at every level");
    z.bracket(&a).expect("levels agree")
}

/// `D^t(a) = [Z₋₁, a]` modulo the left ideal spanned by monomials with a Z₀ or Z₋₁ factor.
pub fn dt_map(a: &UElement) -> Result<UElement, EnvelopingError> {
    if !a.in_a1() {
        return Err(EnvelopingError::NotInA1);
    }
    let b = ad_z_minus1(a);
    Ok(UElement { level: a.level, primed: b.primed.filter(|m| m.in_a1()) })
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.terms(), f)
    }
}
