use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use super::lincomb::write_terms;
use super::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstant,
    #[error("reversion needs f(0) = 0 and f'(0) = 1")]
    NotTangentToIdentity,
    #[error("logarithm needs f(0) = 1")]
    LogNeedsUnitConstant,
    #[error("exponential needs f(0) = 0")]
    ExpNeedsZeroConstant,
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
}

/// Power series known exactly through `x^order`; higher terms are unknown and discarded.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Coefficients `c_0..c_order`; missing ones are zero, extra ones dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `x`.
    pub fn identity(order: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `f'`, known through order `N - 1`. The derivative of an order-0 series is the
    /// zero series of order 0.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        let c = (1..=n).map(|k| &self.coeffs[k] * int(k as i64)).collect();
        Self::new(c, n - 1)
    }

    /// Antiderivative with zero constant term, known through order `N + 1`.
    pub fn integral(&self) -> Self {
        let n = self.order();
        let mut c = vec![Rational::zero()];
        c.extend((0..=n).map(|k| &self.coeffs[k] / int(k as i64 + 1)));
        Self::new(c, n + 1)
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b = vec![inv0.clone()];
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &b[k - j];
            }
            b.push(-s * &inv0);
        }
        Ok(Self::new(b, n))
    }

    /// Integer power; negative exponents need an invertible series.
    pub fn powi(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.order());
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// `f(g(x))`; `g(0)` must vanish.
    pub fn compose(&self, g: &TruncSeries) -> Result<Self, SeriesError> {
        if !g.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = Self::constant(self.coeff(n), n);
        for k in (0..n).rev() {
            acc = &acc * &g;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse of a series tangent to the identity.
    pub fn reverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() || !(self.order() == 0 || self.coeffs[1].is_one()) {
            return Err(SeriesError::NotTangentToIdentity);
        }
        let n = self.order();
        // f = x + h(x); the inverse r solves r = x - h(r), gaining one order per pass.
        let mut h = self.clone();
        if n >= 1 {
            h.coeffs[1] = Rational::zero();
        }
        let x = Self::identity(n);
        let mut r = x.clone();
        for _ in 0..n {
            r = &x - &h.compose(&r)?;
        }
        Ok(r)
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogNeedsUnitConstant);
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        let q = &self.derivative() * &self.inverse()?;
        Ok(q.integral())
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpNeedsZeroConstant);
        }
        let n = self.order();
        let mut e = vec![Rational::one()];
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * int(j as i64) * &e[k - j];
            }
            e.push(s / int(k as i64));
        }
        Ok(Self::new(e, n))
    }

    /// Evaluate the stored coefficients as a polynomial at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        TruncSeries::new((0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(), n)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        TruncSeries::new((0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(), n)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        let mut c = vec![Rational::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                c[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        TruncSeries { coeffs: c }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let key = match k {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{k}"),
                };
                (c, key)
            })
            .collect();
        write_terms(f, terms)?;
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
