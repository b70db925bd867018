use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::lincomb::{write_terms, LinComb};
use super::rational::Rational;

/// Sparse exponent vector: variable index -> positive exponent.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Exponents(BTreeMap<u32, u32>);

impl Exponents {
    pub fn one() -> Self {
        Exponents(BTreeMap::new())
    }

    pub fn var(v: u32) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: u32, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(v, e);
        }
        Exponents(m)
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        Exponents(m)
    }

    pub fn get(&self, v: u32) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        let mut m = self.0.clone();
        for (v, e) in &other.0 {
            *m.entry(*v).or_insert(0) += e;
        }
        Exponents(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    /// Weighted degree with variable `v` carrying weight `w(v)`.
    pub fn weight<W: Fn(u32) -> u32>(&self, w: W) -> u32 {
        self.0.iter().map(|(v, e)| w(*v) * e).sum()
    }
}

/// Commutative polynomial with rational coefficients over numbered variables.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CommPoly {
    terms: LinComb<Exponents>,
}

impl CommPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        CommPoly { terms: LinComb::term(Exponents::one(), c) }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: u32) -> Self {
        CommPoly { terms: LinComb::basis(Exponents::var(v)) }
    }

    pub fn monomial(e: Exponents, c: Rational) -> Self {
        CommPoly { terms: LinComb::term(e, c) }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rational)>>(iter: I) -> Self {
        CommPoly { terms: LinComb::from_terms(iter) }
    }

    pub fn terms(&self) -> &LinComb<Exponents> {
        &self.terms
    }

    pub fn coeff(&self, e: &Exponents) -> Rational {
        self.terms.coeff(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        CommPoly { terms: self.terms.scale(s) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Keep only terms accepted by `keep` (used for truncation by weight or degree).
    pub fn retain<F: FnMut(&Exponents) -> bool>(&self, keep: F) -> Self {
        CommPoly { terms: self.terms.filter(keep) }
    }

    /// Largest weight among the terms, or `None` for the zero polynomial.
    pub fn max_weight<W: Fn(u32) -> u32 + Copy>(&self, w: W) -> Option<u32> {
        self.terms.keys().map(|e| e.weight(w)).max()
    }

    pub fn is_homogeneous<W: Fn(u32) -> u32 + Copy>(&self, w: W) -> bool {
        let mut it = self.terms.keys().map(|e| e.weight(w));
        match it.next() {
            None => true,
            Some(first) => it.all(|x| x == first),
        }
    }

    pub fn derivative(&self, v: u32) -> Self {
        let mut out = LinComb::zero();
        for (e, c) in &self.terms {
            let k = e.get(v);
            if k == 0 {
                continue;
            }
            let rest = Exponents::from_pairs(e.iter().map(|(x, p)| if x == v { (x, p - 1) } else { (x, p) }));
            out.add_term(rest, c * Rational::from_integer(k.into()));
        }
        CommPoly { terms: out }
    }

    /// Replace variable `v` by the polynomial `p` everywhere.
    pub fn substitute(&self, v: u32, p: &CommPoly) -> Self {
        let mut powers: Vec<CommPoly> = vec![CommPoly::one()];
        let mut out = CommPoly::zero();
        for (e, c) in &self.terms {
            let k = e.get(v) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * p;
                powers.push(next);
            }
            let rest = Exponents::from_pairs(e.iter().filter(|(x, _)| *x != v));
            out = out + &(&CommPoly::monomial(rest, c.clone()) * &powers[k]);
        }
        out
    }

    /// Map each variable to a (possibly signed) multiple of another variable.
    pub fn rename<F: Fn(u32) -> (u32, Rational)>(&self, f: F) -> Self {
        let mut out = LinComb::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut pairs = Vec::new();
            for (v, k) in e.iter() {
                let (w, s) = f(v);
                for _ in 0..k {
                    coeff *= &s;
                }
                pairs.push((w, k));
            }
            out.add_term(Exponents::from_pairs(pairs), coeff);
        }
        CommPoly { terms: out }
    }

    pub fn eval(&self, values: &dyn Fn(u32) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, k) in e.iter() {
                let x = values(v);
                for _ in 0..k {
                    t *= &x;
                }
            }
            total += t;
        }
        total
    }

    /// Render with a caller-supplied variable name function, e.g. `|j| format!("x{j}")`.
    pub fn display_with<'a, N: Fn(u32) -> String + 'a>(&'a self, name: N) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, name }
    }

    /// Terms ordered by decreasing weight, then by decreasing exponent of the
    /// highest variable; this is the ordering used for printed output.
    pub fn terms_for_display<W: Fn(u32) -> u32 + Copy>(&self, w: W) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let ka: Vec<(u32, u32)> = a.iter().collect::<Vec<_>>().into_iter().rev().collect();
            let kb: Vec<(u32, u32)> = b.iter().collect::<Vec<_>>().into_iter().rev().collect();
            b.weight(w).cmp(&a.weight(w)).then(kb.cmp(&ka))
        });
        v
    }
}

struct PolyDisplay<'a, N> {
    poly: &'a CommPoly,
    name: N,
}

impl<N: Fn(u32) -> String> fmt::Display for PolyDisplay<'_, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.terms_for_display(|v| v);
        write_terms(
            f,
            terms.into_iter().map(|(e, c)| {
                let mut parts: Vec<String> = Vec::new();
                for (v, k) in e.iter().collect::<Vec<_>>().into_iter().rev() {
                    if k == 1 {
                        parts.push((self.name)(v));
                    } else {
                        parts.push(format!("{}^{}", (self.name)(v), k));
                    }
                }
                (c, parts.join(" "))
            }),
        )
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|v| format!("v{v}")))
    }
}

impl Add<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        CommPoly { terms: &self.terms + &rhs.terms }
    }
}

impl Add<&CommPoly> for CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        &self + rhs
    }
}

impl Add for CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: CommPoly) -> CommPoly {
        &self + &rhs
    }
}

impl Sub<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        CommPoly { terms: &self.terms - &rhs.terms }
    }
}

impl Sub for CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: CommPoly) -> CommPoly {
        &self - &rhs
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        CommPoly { terms: -&self.terms }
    }
}

impl Mul<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        CommPoly { terms: self.terms.bilinear(&rhs.terms, |a, b| LinComb::basis(a.mul(b))) }
    }
}

impl Mul for CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: CommPoly) -> CommPoly {
        &self * &rhs
    }
}
