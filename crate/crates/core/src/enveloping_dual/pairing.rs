use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{ad_z_minus1, l0_eval, u_product, EnvelopingError, UElement, UMonomial};
use crate::algebra_kernel::{binomial, CommPoly, Exponents, LinComb, QMatrix, Rational};
use crate::hopf_h1::{is_delta_polynomial, DeltaMono, HElement, PbwMonomial};

/// `⟨δ_n, a⟩ = L₀(ad(Z₋₁)^n a)` for `a ∈ U(𝔞¹)`.
pub fn pair_delta(n: u32, a: &UElement) -> Result<Rational, EnvelopingError> {
    if !a.in_a1() {
        return Err(EnvelopingError::NotInA1);
    }
    let mut b = a.clone();
    for _ in 0..n {
        b = ad_z_minus1(&b);
    }
    Ok(l0_eval(&b))
}

/// Monomials of U(𝔞¹) of weight `w`, one per partition of `w`.
pub fn u_monomials_of_weight(w: u32) -> Vec<UMonomial> {
    DeltaMono::all_of_weight(w).into_iter().map(|d| UMonomial::from_a1_exponents(d.exponents())).collect()
}

struct Pairing {
    generator_values: HashMap<(u32, UMonomial), Rational>,
}

impl Pairing {
    fn new() -> Self {
        Pairing { generator_values: HashMap::new() }
    }

    fn generator(&mut self, n: u32, m: &UMonomial) -> Rational {
        if m.weight() != n as i32 {
            return Rational::zero();
        }
        if let Some(v) = self.generator_values.get(&(n, m.clone())) {
            return v.clone();
        }
        let level = m.max_index().unwrap_or(1).max(1) as u32;
        let a = UElement::monomial(m.clone(), level).expect("level covers the monomial");
        let v = pair_delta(n, &a).expect("monomial lies in U(a^1)");
        self.generator_values.insert((n, m.clone()), v.clone());
        v
    }

    /// `⟨δ_{f₁}···δ_{f_r}, Z^m⟩` through the coproduct of U, in which every Z_k is primitive.
    fn monomial(&mut self, factors: &[u32], m: &UMonomial) -> Rational {
        if factors.is_empty() {
            return if m.is_one() { Rational::one() } else { Rational::zero() };
        }
        if factors.iter().sum::<u32>() as i32 != m.weight() {
            return Rational::zero();
        }
        let n = factors[0];
        let rest = &factors[1..];
        let exps: Vec<(i32, u32)> = m.factors().collect();
        let mut total = Rational::zero();
        let mut choice = vec![0u32; exps.len()];
        loop {
            let sub = UMonomial::from_pairs(&exps.iter().zip(&choice).map(|((k, _), c)| (*k, *c)).collect::<Vec<_>>());
            if sub.weight() == n as i32 {
                let g = self.generator(n, &sub);
                if !g.is_zero() {
                    let remaining = UMonomial::from_pairs(
                        &exps.iter().zip(&choice).map(|((k, e), c)| (*k, e - c)).collect::<Vec<_>>(),
                    );
                    let r = self.monomial(rest, &remaining);
                    if !r.is_zero() {
                        let mut mult = Rational::one();
                        for ((_, e), c) in exps.iter().zip(&choice) {
                            mult *= Rational::from_integer(binomial(*e as u64, *c as u64));
                        }
                        total += g * r * mult;
                    }
                }
            }
            // next sub-multi-index
            let mut i = 0;
            loop {
                if i == exps.len() {
                    return total;
                }
                if choice[i] < exps[i].1 {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

/// The Hopf pairing `⟨P, a⟩` of a δ-polynomial with an element of U(𝔞¹).
pub fn pair(h: &HElement, a: &UElement) -> Result<Rational, EnvelopingError> {
    if !is_delta_polynomial(h) {
        return Err(EnvelopingError::NotDeltaPolynomial);
    }
    if !a.in_a1() {
        return Err(EnvelopingError::NotInA1);
    }
    let mut p = Pairing::new();
    let terms = a.terms();
    let mut total = Rational::zero();
    for (hm, c) in h {
        let factors = hm.delta.factors();
        for (um, d) in &terms {
            let v = p.monomial(&factors, um);
            if !v.is_zero() {
                total += v * c * d;
            }
        }
    }
    Ok(total)
}

/// Gram matrix of the pairing in weight `w`: rows are δ-monomials, columns U-monomials,
/// both indexed by partitions of `w` in the same order.
pub fn gram_matrix(w: u32) -> QMatrix {
    let deltas = DeltaMono::all_of_weight(w);
    let us = u_monomials_of_weight(w);
    let mut p = Pairing::new();
    let rows = deltas
        .iter()
        .map(|d| {
            let f = d.factors();
            us.iter().map(|u| p.monomial(&f, u)).collect()
        })
        .collect();
    QMatrix::from_rows(rows, us.len())
}

/// `Z₁^{a₁} Z₂^{a₂} ··· Z_n^{a_n}` (increasing order) in normal form.
fn reversed_word(m: &UMonomial, level: u32) -> UElement {
    let mut acc = UElement::one(level);
    for (k, e) in m.factors() {
        for _ in 0..e {
            acc = u_product(&acc, &UElement::z(k, level).expect("level covers index")).expect("same level");
        }
    }
    acc
}

/// `ρ(P) = Σ_a ⟨P, Z^a⟩ / a! · x^a` with `Z^a = Z_n^{a_n}···Z₁^{a₁}`; variable `j` is `x_j`.
/// With `reversed`, pairs against `Z₁^{a₁}···Z_n^{a_n}` instead (the map ρ̃, variables `z_j`).
pub fn rho_map(h: &HElement, reversed: bool) -> Result<CommPoly, EnvelopingError> {
    if !is_delta_polynomial(h) {
        return Err(EnvelopingError::NotDeltaPolynomial);
    }
    let mut weights: Vec<u32> = h.keys().map(PbwMonomial::weight).collect();
    weights.sort();
    weights.dedup();
    let mut p = Pairing::new();
    let mut out = CommPoly::zero();
    for w in weights {
        let part: HElement = h.filter(|m| m.weight() == w);
        for m in u_monomials_of_weight(w) {
            let basis = if reversed {
                reversed_word(&m, w.max(1)).terms()
            } else {
                LinComb::basis(m.clone())
            };
            let mut v = Rational::zero();
            for (hm, c) in &part {
                let f = hm.delta.factors();
                for (um, d) in &basis {
                    let x = p.monomial(&f, um);
                    if !x.is_zero() {
                        v += x * c * d;
                    }
                }
            }
            if !v.is_zero() {
                let e = Exponents::from_pairs(m.factors().map(|(k, a)| (k as u32, a)));
                out = out + CommPoly::monomial(e, v / Rational::from_integer(m.factorial()));
            }
        }
    }
    Ok(out)
}
