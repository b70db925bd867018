use num_traits::Zero;

use super::{BElem, BTensor, BicrossedHopf, MatchedPairError};
use crate::algebra_kernel::{int, QMatrix, Rational};

/// Normalization of the trace `τ₀(f U*_a) = [a = 1] Σ_k f(k)` on the dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceChoice {
    /// Sum over G₁ (counting measure).
    Sum,
    /// Sum over G₁ divided by |G₁|, so that `τ₀(1) = 1`.
    Normalized,
}

impl BicrossedHopf {
    pub fn tau0_basis(&self, x: usize, choice: TraceChoice) -> Rational {
        if self.label(x).0 != 0 {
            return Rational::zero();
        }
        match choice {
            TraceChoice::Sum => int(1),
            TraceChoice::Normalized => Rational::new(1.into(), (self.factorization().n1() as i64).into()),
        }
    }

    pub fn tau0(&self, x: &BElem, choice: TraceChoice) -> Rational {
        x.iter().map(|(&i, c)| c * self.tau0_basis(i, choice)).sum()
    }

    /// The character δ with `τ₀(y(x)) = δ(y) τ₀(x)`, solved on basis elements.
    pub fn modular_character_basis(&self) -> Result<Vec<Rational>, MatchedPairError> {
        let d = self.dim();
        let choice = TraceChoice::Sum;
        let witness = (0..d).find(|&x| !self.tau0_basis(x, choice).is_zero()).expect("τ₀ is nonzero");
        let mut out = Vec::with_capacity(d);
        for y in 0..d {
            let value = |x: usize| self.left_action_basis(y, x).map_or_else(Rational::zero, |z| self.tau0_basis(z, choice));
            let delta = value(witness) / self.tau0_basis(witness, choice);
            if (0..d).any(|x| value(x) != &delta * self.tau0_basis(x, choice)) {
                return Err(MatchedPairError::NoModularCharacter(self.basis_name(y)));
            }
            out.push(delta);
        }
        Ok(out)
    }

    /// `S̃(y) = Σ δ(y₍₀₎) S(y₍₁₎)`.
    pub fn twisted_antipode(&self, y: &BElem) -> Result<BElem, MatchedPairError> {
        let delta = self.modular_character_basis()?;
        let mut out = BElem::zero();
        for (key, c) in &self.coproduct(y) {
            let d = &delta[key[0]];
            if !d.is_zero() {
                out.add_term(self.antipode_basis(key[1]), c * d);
            }
        }
        Ok(out)
    }

    /// `θ(y₀⊗…⊗y_n)(x⁰,…,x^n) = τ₀(y₀(x⁰)···y_n(x^n))` on basis tuples.
    pub fn theta_value(&self, y: &[usize], x: &[usize], choice: TraceChoice) -> Rational {
        let mut acc: Option<usize> = None;
        for (&yi, &xi) in y.iter().zip(x) {
            let Some(z) = self.left_action_basis(yi, xi) else {
                return Rational::zero();
            };
            acc = match acc {
                None => Some(z),
                Some(a) => match self.dual_mul_basis(a, z) {
                    Some(p) => Some(p),
                    None => return Rational::zero(),
                },
            };
        }
        acc.map_or_else(Rational::zero, |a| self.tau0_basis(a, choice))
    }
}

/// All basis tuples of `H^{⊗m}` in lexicographic order.
pub fn tensor_basis(dim: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|k| {
                (0..dim).map(move |i| {
                    let mut k2 = k.clone();
                    k2.push(i);
                    k2
                })
            })
            .collect();
    }
    out
}

/// `t(h₀⊗…⊗h_n) = Δ^{n−1}(S̃h₀) · (h₁⊗…⊗h_n)`; for `n = 0` this is `δ(h₀)`.
pub fn t_map(h: &BicrossedHopf, t: &BTensor) -> Result<BTensor, MatchedPairError> {
    let mut out = BTensor::zero();
    for (key, c) in t {
        let s = h.twisted_antipode(&BElem::basis(key[0]))?;
        let spread = h.iterated_coproduct(&s, key.len() - 1);
        let rest = BTensor::basis(key[1..].to_vec());
        out.add_scaled(&h.tensor_mul(&spread, &rest), c);
    }
    Ok(out)
}

/// Matrix of θ on `H^{⊗(n+1)}`: one column per basis tuple of H, one row per basis
/// tuple of the dual.
pub fn theta_matrix(h: &BicrossedHopf, n: usize, choice: TraceChoice) -> QMatrix {
    let cols = tensor_basis(h.dim(), n + 1);
    let rows = tensor_basis(h.dim(), n + 1);
    let mut m = QMatrix::zeros(rows.len(), cols.len());
    for (j, y) in cols.iter().enumerate() {
        for (i, x) in rows.iter().enumerate() {
            let v = h.theta_value(y, x, choice);
            if !v.is_zero() {
                m.set(i, j, v);
            }
        }
    }
    m
}

/// Matrix of t from `H^{⊗(n+1)}` to `H^{⊗n}`.
pub fn t_matrix(h: &BicrossedHopf, n: usize) -> Result<QMatrix, MatchedPairError> {
    let cols = tensor_basis(h.dim(), n + 1);
    let rows = tensor_basis(h.dim(), n);
    let pos = |k: &Vec<usize>| k.iter().fold(0, |acc, &i| acc * h.dim() + i);
    let mut m = QMatrix::zeros(rows.len(), cols.len());
    for (j, y) in cols.iter().enumerate() {
        for (k, c) in &t_map(h, &BTensor::basis(y.clone()))? {
            m.set(pos(k), j, c.clone());
        }
    }
    Ok(m)
}

/// `Ker θ = Ker t` on `H^{⊗(n+1)}`, checked as equality of row spaces:
/// `rank Θ = rank T = rank [Θ; T]`. Returns the three ranks and the verdict.
pub fn kernels_agree(h: &BicrossedHopf, n: usize, choice: TraceChoice) -> Result<(usize, usize, usize, bool), MatchedPairError> {
    let theta = theta_matrix(h, n, choice);
    let t = t_matrix(h, n)?;
    let stacked = theta.transpose().hconcat(&t.transpose()).transpose();
    let (rt, rk, rs) = (theta.rank(), t.rank(), stacked.rank());
    Ok((rt, rk, rs, rt == rk && rk == rs))
}
