use num_traits::{One, Zero};

use super::{Factorization, MatchedPairError};
use crate::algebra_kernel::{LinComb, Rational};

/// Element of H(G) or of its dual, over basis indices.
pub type BElem = LinComb<usize>;
/// Element of a tensor power, keyed by tuples of basis indices.
pub type BTensor = LinComb<Vec<usize>>;

/// H(G) on the basis `ε_a X_k`, index `a·|G₁| + k`. The dual crossed product uses the
/// same indices for `e_k U*_a`.
#[derive(Clone, Debug)]
pub struct BicrossedHopf {
    f: Factorization,
}

impl BicrossedHopf {
    pub fn new(f: Factorization) -> Self {
        BicrossedHopf { f }
    }

    pub fn factorization(&self) -> &Factorization {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.f.n1() * self.f.n2()
    }

    pub fn index(&self, a: usize, k: usize) -> usize {
        a * self.f.n1() + k
    }

    /// `(a, k)` of a basis index.
    pub fn label(&self, i: usize) -> (usize, usize) {
        (i / self.f.n1(), i % self.f.n1())
    }

    pub fn basis_name(&self, i: usize) -> String {
        let (a, k) = self.label(i);
        format!("ε[{}]X[{}]", self.f.name2(a), self.f.name1(k))
    }

    pub fn dual_basis_name(&self, i: usize) -> String {
        let (a, k) = self.label(i);
        format!("e[{}]U*[{}]", self.f.name1(k), self.f.name2(a))
    }

    /// `(ε_a X_k)(ε_b X_l) = [a = b·k⁻¹] ε_a X_{kl}`.
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        let ((a, k), (b, l)) = (self.label(i), self.label(j));
        (a == self.f.act_right(b, self.f.inv1(k))).then(|| self.index(a, self.f.mul1(k, l)))
    }

    pub fn mul(&self, x: &BElem, y: &BElem) -> BElem {
        x.bilinear(y, |&i, &j| self.mul_basis(i, j).map_or_else(LinComb::zero, LinComb::basis))
    }

    /// `1 = Σ_a ε_a X_1`.
    pub fn unit(&self) -> BElem {
        (0..self.f.n2()).map(|a| (self.index(a, 0), Rational::one())).collect()
    }

    /// `Δ(ε_c X_k) = Σ_{ba=c} ε_a X_k ⊗ ε_b X_{a(k)}`.
    pub fn coproduct_basis(&self, i: usize) -> Vec<(usize, usize)> {
        let (c, k) = self.label(i);
        (0..self.f.n2())
            .map(|a| {
                let b = self.f.mul2(c, self.f.inv2(a));
                (self.index(a, k), self.index(b, self.f.act_left(a, k)))
            })
            .collect()
    }

    pub fn coproduct(&self, x: &BElem) -> BTensor {
        self.coproduct_leg(&x.map_keys(|&i| vec![i]), 0)
    }

    /// Apply Δ to tensor leg `leg`.
    pub fn coproduct_leg(&self, t: &BTensor, leg: usize) -> BTensor {
        let mut out = BTensor::zero();
        for (key, c) in t {
            for (p, q) in self.coproduct_basis(key[leg]) {
                let mut k = key[..leg].to_vec();
                k.push(p);
                k.push(q);
                k.extend_from_slice(&key[leg + 1..]);
                out.add_term(k, c.clone());
            }
        }
        out
    }

    /// `Δ^{m−1}(x)` into `m` legs; `m = 0` gives the counit as a scalar on the empty key.
    pub fn iterated_coproduct(&self, x: &BElem, m: usize) -> BTensor {
        if m == 0 {
            let mut t = BTensor::zero();
            t.add_term(Vec::new(), self.counit(x));
            return t;
        }
        let mut t = x.map_keys(|&i| vec![i]);
        for leg in 0..m - 1 {
            t = self.coproduct_leg(&t, leg);
        }
        t
    }

    /// `ε(ε_a X_k) = [a = 1]`.
    pub fn counit_basis(&self, i: usize) -> Rational {
        if self.label(i).0 == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    pub fn counit(&self, x: &BElem) -> Rational {
        x.iter().map(|(&i, c)| c * self.counit_basis(i)).sum()
    }

    /// `S(ε_a X_k) = X_{a(k)}⁻¹ ε_{a⁻¹} = ε_{(a·k)⁻¹} X_{a(k)⁻¹}`.
    pub fn antipode_basis(&self, i: usize) -> usize {
        let (a, k) = self.label(i);
        self.index(self.f.inv2(self.f.act_right(a, k)), self.f.inv1(self.f.act_left(a, k)))
    }

    pub fn antipode(&self, x: &BElem) -> BElem {
        x.map_keys(|&i| self.antipode_basis(i))
    }

    /// Leg-wise product in `H^{⊗m}`.
    pub fn tensor_mul(&self, s: &BTensor, t: &BTensor) -> BTensor {
        s.bilinear(t, |ka, kb| {
            let mut key = Vec::with_capacity(ka.len());
            for (&i, &j) in ka.iter().zip(kb) {
                match self.mul_basis(i, j) {
                    Some(m) => key.push(m),
                    None => return LinComb::zero(),
                }
            }
            LinComb::basis(key)
        })
    }

    /// Check every Hopf-algebra axiom on basis elements; the error names the first failure.
    pub fn verify_axioms(&self) -> Result<(), MatchedPairError> {
        let d = self.dim();
        let basis = |i: usize| BElem::basis(i);
        let fail = |what: String| Err(MatchedPairError::AxiomFailure(what));
        let unit = self.unit();
        for i in 0..d {
            let x = basis(i);
            if self.mul(&unit, &x) != x || self.mul(&x, &unit) != x {
                return fail(format!("unit at {}", self.basis_name(i)));
            }
            let dx = self.coproduct(&x);
            if self.coproduct_leg(&dx, 0) != self.coproduct_leg(&dx, 1) {
                return fail(format!("coassociativity at {}", self.basis_name(i)));
            }
            let mut left = BElem::zero();
            let mut right = BElem::zero();
            let mut s_left = BElem::zero();
            let mut s_right = BElem::zero();
            for (key, c) in &dx {
                left.add_scaled(&basis(key[1]), &(c * self.counit_basis(key[0])));
                right.add_scaled(&basis(key[0]), &(c * self.counit_basis(key[1])));
                s_left.add_scaled(&self.mul(&basis(self.antipode_basis(key[0])), &basis(key[1])), c);
                s_right.add_scaled(&self.mul(&basis(key[0]), &basis(self.antipode_basis(key[1]))), c);
            }
            if left != x || right != x {
                return fail(format!("counit at {}", self.basis_name(i)));
            }
            let eps = unit.scale(&self.counit_basis(i));
            if s_left != eps {
                return fail(format!("m(S⊗id)Δ at {}", self.basis_name(i)));
            }
            if s_right != eps {
                return fail(format!("m(id⊗S)Δ at {}", self.basis_name(i)));
            }
            for j in 0..d {
                let y = basis(j);
                let xy = self.mul(&x, &y);
                if self.coproduct(&xy) != self.tensor_mul(&dx, &self.coproduct(&y)) {
                    return fail(format!("Δ multiplicative at ({}, {})", self.basis_name(i), self.basis_name(j)));
                }
                if self.counit(&xy) != self.counit_basis(i) * self.counit_basis(j) {
                    return fail(format!("ε multiplicative at ({}, {})", self.basis_name(i), self.basis_name(j)));
                }
                for k in 0..d {
                    let z = basis(k);
                    if self.mul(&xy, &z) != self.mul(&x, &self.mul(&y, &z)) {
                        return fail(format!("associativity at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        let mut one_one = BTensor::zero();
        for (i, _) in &unit {
            for (j, _) in &unit {
                one_one.add_term(vec![*i, *j], Rational::one());
            }
        }
        if self.coproduct(&unit) != one_one {
            return fail("Δ(1) = 1 ⊗ 1".to_string());
        }
        Ok(())
    }

    /// `(e_k U*_a)(e_l U*_b) = [a(k) = l] e_k U*_{ba}`.
    pub fn dual_mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        let ((a, k), (b, l)) = (self.label(i), self.label(j));
        (self.f.act_left(a, k) == l).then(|| self.index(self.f.mul2(b, a), k))
    }

    pub fn dual_mul(&self, x: &BElem, y: &BElem) -> BElem {
        x.bilinear(y, |&i, &j| self.dual_mul_basis(i, j).map_or_else(LinComb::zero, LinComb::basis))
    }

    /// `1 = Σ_k e_k U*_1`.
    pub fn dual_unit(&self) -> BElem {
        (0..self.f.n1()).map(|k| (self.index(0, k), Rational::one())).collect()
    }

    /// The pairing in the chosen bases is the identity matrix.
    pub fn pairing(&self, h: &BElem, x: &BElem) -> Rational {
        h.iter().map(|(i, c)| c * x.coeff(i)).sum()
    }

    /// Left action `(ε_b X_l)(e_k U*_a) = [a·(k l⁻¹) = b] e_{k l⁻¹} U*_a`.
    pub fn left_action_basis(&self, h: usize, x: usize) -> Option<usize> {
        let ((b, l), (a, k)) = (self.label(h), self.label(x));
        let k1 = self.f.mul1(k, self.f.inv1(l));
        (self.f.act_right(a, k1) == b).then(|| self.index(a, k1))
    }

    pub fn left_action(&self, h: &BElem, x: &BElem) -> BElem {
        h.bilinear(x, |&i, &j| self.left_action_basis(i, j).map_or_else(LinComb::zero, LinComb::basis))
    }

    /// Right action `(e_k U*_a)(ε_b X_l) = [a = b] e_{l⁻¹k} U*_{a·l}`.
    pub fn right_action_basis(&self, x: usize, h: usize) -> Option<usize> {
        let ((a, k), (b, l)) = (self.label(x), self.label(h));
        (a == b).then(|| self.index(self.f.act_right(a, l), self.f.mul1(self.f.inv1(l), k)))
    }

    pub fn right_action(&self, x: &BElem, h: &BElem) -> BElem {
        x.bilinear(h, |&i, &j| self.right_action_basis(i, j).map_or_else(LinComb::zero, LinComb::basis))
    }
}
