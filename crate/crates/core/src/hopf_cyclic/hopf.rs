use std::fmt;

use num_traits::{One, Zero};

use crate::algebra_kernel::{binomial, int, LinComb, Rational};
use crate::hopf_h1::{self, monomials_up_to_degree, HElement, PbwMonomial};
use crate::matched_pair::{BElem, BicrossedHopf, MatchedPairError};

/// What the cyclic module needs from a Hopf algebra with modular pair `(δ, 1)`,
/// expressed on a chosen linear basis.
pub trait HopfAlgebra {
    type Basis: Clone + Ord + fmt::Debug;

    fn one(&self) -> LinComb<Self::Basis>;
    fn mul_basis(&self, a: &Self::Basis, b: &Self::Basis) -> LinComb<Self::Basis>;
    fn coproduct_basis(&self, a: &Self::Basis) -> LinComb<(Self::Basis, Self::Basis)>;
    fn counit_basis(&self, a: &Self::Basis) -> Rational;
    /// The modular character δ.
    fn modular_basis(&self, a: &Self::Basis) -> Rational;
    /// `S̃(a) = Σ δ(a₍₀₎) S(a₍₁₎)`.
    fn twisted_antipode_basis(&self, a: &Self::Basis) -> LinComb<Self::Basis>;
    /// A finite pool of basis elements of "size" at most `degree`, for exhaustive tests.
    fn sample_basis(&self, degree: u32) -> Vec<Self::Basis>;
    fn basis_name(&self, a: &Self::Basis) -> String;
}

/// H(1) on its PBW basis.
#[derive(Clone, Copy, Debug, Default)]
pub struct H1;

impl HopfAlgebra for H1 {
    type Basis = PbwMonomial;

    fn one(&self) -> HElement {
        hopf_h1::h_one()
    }

    fn mul_basis(&self, a: &PbwMonomial, b: &PbwMonomial) -> HElement {
        hopf_h1::normal_product(&HElement::basis(a.clone()), &HElement::basis(b.clone()))
    }

    fn coproduct_basis(&self, a: &PbwMonomial) -> LinComb<(PbwMonomial, PbwMonomial)> {
        hopf_h1::coproduct(&HElement::basis(a.clone()), 1).map_keys(|k| (k[0].clone(), k[1].clone()))
    }

    fn counit_basis(&self, a: &PbwMonomial) -> Rational {
        hopf_h1::counit(&HElement::basis(a.clone()))
    }

    fn modular_basis(&self, a: &PbwMonomial) -> Rational {
        hopf_h1::modular_character(&HElement::basis(a.clone()))
    }

    fn twisted_antipode_basis(&self, a: &PbwMonomial) -> HElement {
        hopf_h1::twisted_antipode(&HElement::basis(a.clone()))
    }

    fn sample_basis(&self, degree: u32) -> Vec<PbwMonomial> {
        monomials_up_to_degree(degree)
    }

    fn basis_name(&self, a: &PbwMonomial) -> String {
        a.to_string()
    }
}

/// U(aff) for the affine Lie algebra `[Y, X] = X`, on the PBW basis `X^a Y^b`
/// (key `(a, b)`), with X, Y primitive and modular character `δ(X) = 0`, `δ(Y) = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AffineEnveloping;

impl AffineEnveloping {
    pub fn x(&self) -> LinComb<(u32, u32)> {
        LinComb::basis((1, 0))
    }

    pub fn y(&self) -> LinComb<(u32, u32)> {
        LinComb::basis((0, 1))
    }

    /// `X^a (Y + s)^b` expanded.
    fn x_shifted_y(a: u32, s: i64, b: u32) -> LinComb<(u32, u32)> {
        let mut out = LinComb::zero();
        let mut pw = int(1);
        for j in (0..=b).rev() {
            out.add_term((a, j), binom(b, j) * &pw);
            pw *= int(s);
        }
        out
    }
}

impl HopfAlgebra for AffineEnveloping {
    type Basis = (u32, u32);

    fn one(&self) -> LinComb<(u32, u32)> {
        LinComb::basis((0, 0))
    }

    /// `X^a Y^b · X^c Y^d = X^{a+c} (Y + c)^b Y^d`.
    fn mul_basis(&self, &(a, b): &(u32, u32), &(c, d): &(u32, u32)) -> LinComb<(u32, u32)> {
        Self::x_shifted_y(a + c, c as i64, b).map_keys(|&(x, y)| (x, y + d))
    }

    fn coproduct_basis(&self, &(a, b): &(u32, u32)) -> LinComb<((u32, u32), (u32, u32))> {
        let mut out = LinComb::zero();
        for i in 0..=a {
            for j in 0..=b {
                out.add_term(((i, j), (a - i, b - j)), binom(a, i) * binom(b, j));
            }
        }
        out
    }

    fn counit_basis(&self, &(a, b): &(u32, u32)) -> Rational {
        if a == 0 && b == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    fn modular_basis(&self, &(a, _): &(u32, u32)) -> Rational {
        if a == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    /// `S̃(X^a Y^b) = (−1)^a X^a (1 − a − Y)^b`.
    fn twisted_antipode_basis(&self, &(a, b): &(u32, u32)) -> LinComb<(u32, u32)> {
        let sign = if (a + b) % 2 == 0 { int(1) } else { int(-1) };
        Self::x_shifted_y(a, a as i64 - 1, b).scale(&sign)
    }

    fn sample_basis(&self, degree: u32) -> Vec<(u32, u32)> {
        (0..=degree).flat_map(|a| (0..=degree - a).map(move |b| (a, b))).collect()
    }

    fn basis_name(&self, &(a, b): &(u32, u32)) -> String {
        match (a, b) {
            (0, 0) => "1".into(),
            (a, 0) => format!("X^{a}"),
            (0, b) => format!("Y^{b}"),
            (a, b) => format!("X^{a}Y^{b}"),
        }
    }
}

fn binom(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(n as u64, k as u64))
}

/// A finite bicrossed product with its modular character and S̃ precomputed.
#[derive(Clone, Debug)]
pub struct FiniteHopf {
    h: BicrossedHopf,
    delta: Vec<Rational>,
    twisted: Vec<BElem>,
}

impl FiniteHopf {
    pub fn new(h: BicrossedHopf) -> Result<Self, MatchedPairError> {
        let delta = h.modular_character_basis()?;
        let twisted = (0..h.dim()).map(|i| h.twisted_antipode(&BElem::basis(i))).collect::<Result<_, _>>()?;
        Ok(FiniteHopf { h, delta, twisted })
    }

    pub fn inner(&self) -> &BicrossedHopf {
        &self.h
    }
}

impl HopfAlgebra for FiniteHopf {
    type Basis = usize;

    fn one(&self) -> BElem {
        self.h.unit()
    }

    fn mul_basis(&self, a: &usize, b: &usize) -> BElem {
        self.h.mul_basis(*a, *b).map_or_else(LinComb::zero, LinComb::basis)
    }

    fn coproduct_basis(&self, a: &usize) -> LinComb<(usize, usize)> {
        self.h.coproduct_basis(*a).into_iter().map(|p| (p, Rational::one())).collect()
    }

    fn counit_basis(&self, a: &usize) -> Rational {
        self.h.counit_basis(*a)
    }

    fn modular_basis(&self, a: &usize) -> Rational {
        self.delta[*a].clone()
    }

    fn twisted_antipode_basis(&self, a: &usize) -> BElem {
        self.twisted[*a].clone()
    }

    fn sample_basis(&self, _degree: u32) -> Vec<usize> {
        (0..self.h.dim()).collect()
    }

    fn basis_name(&self, a: &usize) -> String {
        self.h.basis_name(*a)
    }
}
