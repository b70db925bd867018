//! The cyclic module `C*(H)` of a Hopf algebra H with modular character δ.
//!
//! Level `n` is `H^{⊗n}`; it corresponds to cochains of cyclic degree `n` on the
//! crossed product through `h¹⊗…⊗hⁿ ↦ θ(1⊗h¹⊗…⊗hⁿ)`, so a tensor of `n` legs lives
//! in degree `n`, not `n − 1`. Operators:
//!
//! - faces `δ_i : H^{⊗(n−1)} → H^{⊗n}`: `δ₀` prepends 1, `δ_n` appends 1, and the
//!   others apply Δ to leg `i` (1-based);
//! - degeneracies `σ_i : H^{⊗(n+1)} → H^{⊗n}` apply ε to leg `i + 1`;
//! - `τ_n(h¹⊗…⊗hⁿ) = Δ^{n−1}S̃(h¹) · (h²⊗…⊗hⁿ⊗1)`.
//!
//! `b = Σ_{i=0}^{n+1} (−1)^i δ_i` and `B = A∘B₀` with
//! `B₀ = σ_{n−1}τ_n − (−1)^n σ_{n−1} = (−1)^{n+1} σ_{n−1}(1 − λ_n)`, `λ_n = (−1)^n τ_n`,
//! and `A = Σ_{i<n} λ_{n−1}^i`.

mod hopf;

pub use hopf::{AffineEnveloping, FiniteHopf, HopfAlgebra, H1};

use itertools::Itertools;
use num_traits::One;
use thiserror::Error;

use crate::algebra_kernel::{int, LinComb, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfCyclicError {
    #[error("{kind} index {index} out of range at level {level}")]
    IndexOutOfRange { kind: &'static str, index: usize, level: usize },
    #[error("the cyclic operator is not defined at level 0")]
    LevelZero,
    #[error("tensor has legs of length {found}, expected level {level}")]
    LevelMismatch { level: usize, found: usize },
}

/// An element of `H^{⊗level}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicTensor<B: Clone + Ord> {
    level: usize,
    terms: LinComb<Vec<B>>,
}

impl<B: Clone + Ord> CyclicTensor<B> {
    pub fn new(level: usize, terms: LinComb<Vec<B>>) -> Result<Self, HopfCyclicError> {
        if let Some(k) = terms.keys().find(|k| k.len() != level) {
            return Err(HopfCyclicError::LevelMismatch { level, found: k.len() });
        }
        Ok(CyclicTensor { level, terms })
    }

    pub fn zero(level: usize) -> Self {
        CyclicTensor { level, terms: LinComb::zero() }
    }

    /// The scalar `c` at level 0.
    pub fn scalar(c: Rational) -> Self {
        CyclicTensor { level: 0, terms: LinComb::term(Vec::new(), c) }
    }

    pub fn basis(key: Vec<B>) -> Self {
        CyclicTensor { level: key.len(), terms: LinComb::basis(key) }
    }

    /// `a¹ ⊗ … ⊗ aⁿ` for elements of H.
    pub fn from_parts(parts: &[LinComb<B>]) -> Self {
        let mut terms = LinComb::basis(Vec::new());
        for p in parts {
            terms = terms.bilinear(p, |k: &Vec<B>, b: &B| {
                let mut key = k.clone();
                key.push(b.clone());
                LinComb::basis(key)
            });
        }
        CyclicTensor { level: parts.len(), terms }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> &LinComb<Vec<B>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "adding tensors of different levels");
        let mut terms = self.terms.clone();
        terms.add_scaled(&other.terms, &Rational::one());
        CyclicTensor { level: self.level, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclicTensor { level: self.level, terms: self.terms.scale(c) }
    }
}

/// The cocyclic module `C*(H)` together with its b, B and t operators.
#[derive(Clone, Debug)]
pub struct CyclicModule<H> {
    h: H,
}

type Tensor<H> = CyclicTensor<<H as HopfAlgebra>::Basis>;

impl<H: HopfAlgebra> CyclicModule<H> {
    pub fn new(h: H) -> Self {
        CyclicModule { h }
    }

    pub fn algebra(&self) -> &H {
        &self.h
    }

    /// Replace leg `leg` of every key by the keys of `f(leg value)`, which may have any
    /// fixed number of legs.
    fn replace_leg<F>(&self, t: &LinComb<Vec<H::Basis>>, leg: usize, mut f: F) -> LinComb<Vec<H::Basis>>
    where
        F: FnMut(&H::Basis) -> LinComb<Vec<H::Basis>>,
    {
        t.map_linear(|k| {
            f(&k[leg]).map_keys(|mid| {
                let mut key = Vec::with_capacity(k.len() + mid.len());
                key.extend_from_slice(&k[..leg]);
                key.extend(mid.iter().cloned());
                key.extend_from_slice(&k[leg + 1..]);
                key
            })
        })
    }

    fn insert_one(&self, t: &LinComb<Vec<H::Basis>>, pos: usize) -> LinComb<Vec<H::Basis>> {
        let one = self.h.one();
        t.bilinear(&one, |k, u| {
            let mut key = k.clone();
            key.insert(pos, u.clone());
            LinComb::basis(key)
        })
    }

    /// Leg-wise product in `H^{⊗m}`.
    pub fn tensor_mul(&self, s: &LinComb<Vec<H::Basis>>, t: &LinComb<Vec<H::Basis>>) -> LinComb<Vec<H::Basis>> {
        s.bilinear(t, |ka, kb| {
            let mut acc = LinComb::basis(Vec::with_capacity(ka.len()));
            for (x, y) in ka.iter().zip(kb) {
                let p = self.h.mul_basis(x, y);
                acc = acc.bilinear(&p, |k: &Vec<H::Basis>, m| {
                    let mut key = k.clone();
                    key.push(m.clone());
                    LinComb::basis(key)
                });
            }
            acc
        })
    }

    /// `Δ^{m−1}` of an element into `m ≥ 1` legs; `m = 0` gives `ε` on the empty key.
    pub fn iterated_coproduct(&self, x: &LinComb<H::Basis>, m: usize) -> LinComb<Vec<H::Basis>> {
        if m == 0 {
            let eps: Rational = x.iter().map(|(b, c)| c * self.h.counit_basis(b)).sum();
            return LinComb::term(Vec::new(), eps);
        }
        let mut t = x.map_keys(|b| vec![b.clone()]);
        for leg in 0..m - 1 {
            t = self.replace_leg(&t, leg, |b| self.h.coproduct_basis(b).map_keys(|(p, q)| vec![p.clone(), q.clone()]));
        }
        t
    }

    /// `δ_i : H^{⊗(n−1)} → H^{⊗n}`, where `n = t.level() + 1`.
    pub fn face(&self, i: usize, t: &Tensor<H>) -> Result<Tensor<H>, HopfCyclicError> {
        let n = t.level + 1;
        let terms = if i == 0 {
            self.insert_one(&t.terms, 0)
        } else if i == n {
            self.insert_one(&t.terms, n - 1)
        } else if i < n {
            self.replace_leg(&t.terms, i - 1, |b| self.h.coproduct_basis(b).map_keys(|(p, q)| vec![p.clone(), q.clone()]))
        } else {
            return Err(HopfCyclicError::IndexOutOfRange { kind: "face", index: i, level: n });
        };
        Ok(CyclicTensor { level: n, terms })
    }

    /// `σ_i : H^{⊗(n+1)} → H^{⊗n}`, applying ε to leg `i + 1`, `0 ≤ i ≤ n`.
    pub fn degeneracy(&self, i: usize, t: &Tensor<H>) -> Result<Tensor<H>, HopfCyclicError> {
        if i >= t.level {
            return Err(HopfCyclicError::IndexOutOfRange { kind: "degeneracy", index: i, level: t.level.saturating_sub(1) });
        }
        let terms = self.replace_leg(&t.terms, i, |b| LinComb::term(Vec::new(), self.h.counit_basis(b)));
        Ok(CyclicTensor { level: t.level - 1, terms })
    }

    /// `τ_n(h¹⊗…⊗hⁿ) = Δ^{n−1}S̃(h¹) · (h²⊗…⊗hⁿ⊗1)`.
    pub fn cyclic(&self, t: &Tensor<H>) -> Result<Tensor<H>, HopfCyclicError> {
        let n = t.level;
        if n == 0 {
            return Err(HopfCyclicError::LevelZero);
        }
        let mut terms = LinComb::zero();
        for (k, c) in &t.terms {
            let spread = self.iterated_coproduct(&self.h.twisted_antipode_basis(&k[0]), n);
            let tail = self.insert_one(&LinComb::basis(k[1..].to_vec()), n - 1);
            terms.add_scaled(&self.tensor_mul(&spread, &tail), c);
        }
        Ok(CyclicTensor { level: n, terms })
    }

    /// `τ_n` at level 0 is the identity; elsewhere as [`Self::cyclic`].
    fn tau(&self, t: &Tensor<H>) -> Tensor<H> {
        if t.level == 0 {
            t.clone()
        } else {
            self.cyclic(t).expect("level ≥ 1")
        }
    }

    /// `λ_n = (−1)^n τ_n`.
    pub fn signed_cyclic(&self, t: &Tensor<H>) -> Tensor<H> {
        let s = self.tau(t);
        if t.level % 2 == 0 {
            s
        } else {
            s.scale(&int(-1))
        }
    }

    /// Hochschild coboundary `b = Σ_{i=0}^{n+1} (−1)^i δ_i : H^{⊗n} → H^{⊗(n+1)}`.
    pub fn hochschild_b(&self, t: &Tensor<H>) -> Tensor<H> {
        let mut out = CyclicTensor::zero(t.level + 1);
        for i in 0..=t.level + 1 {
            let f = self.face(i, t).expect("index in range");
            out = if i % 2 == 0 { out.add(&f) } else { out.sub(&f) };
        }
        out
    }

    /// `B₀ = σ_{n−1}τ_n − (−1)^n σ_{n−1}` on level `n ≥ 1`.
    pub fn connes_b0(&self, t: &Tensor<H>) -> Result<Tensor<H>, HopfCyclicError> {
        let n = t.level;
        if n == 0 {
            return Err(HopfCyclicError::LevelZero);
        }
        let first = self.degeneracy(n - 1, &self.cyclic(t)?)?;
        let second = self.degeneracy(n - 1, t)?;
        Ok(if n % 2 == 0 { first.sub(&second) } else { first.add(&second) })
    }

    /// `B = (Σ_{i<n} λ_{n−1}^i) ∘ B₀ : H^{⊗n} → H^{⊗(n−1)}`; zero at level 0.
    pub fn connes_b(&self, t: &Tensor<H>) -> Tensor<H> {
        if t.level == 0 {
            return CyclicTensor::zero(0);
        }
        let b0 = self.connes_b0(t).expect("level ≥ 1");
        let mut out = CyclicTensor::zero(t.level - 1);
        let mut cur = b0;
        for _ in 0..t.level {
            out = out.add(&cur);
            cur = self.signed_cyclic(&cur);
        }
        out
    }

    /// `t(h⁰⊗…⊗hⁿ) = Δ^{n−1}S̃(h⁰) · (h¹⊗…⊗hⁿ)`, taking level `n+1` to level `n`;
    /// at `n = 0` this is `δ(h⁰)`.
    pub fn t_normalize(&self, t: &Tensor<H>) -> Result<Tensor<H>, HopfCyclicError> {
        if t.level == 0 {
            return Err(HopfCyclicError::LevelZero);
        }
        let n = t.level - 1;
        let mut terms = LinComb::zero();
        for (k, c) in &t.terms {
            let s = self.h.twisted_antipode_basis(&k[0]);
            let spread = if n == 0 {
                let d: Rational = s.iter().map(|(b, c)| c * self.h.counit_basis(b)).sum();
                LinComb::term(Vec::new(), d)
            } else {
                self.iterated_coproduct(&s, n)
            };
            terms.add_scaled(&self.tensor_mul(&spread, &LinComb::basis(k[1..].to_vec())), c);
        }
        Ok(CyclicTensor { level: n, terms })
    }

    /// `1 ⊗ t`, the section of [`Self::t_normalize`].
    pub fn one_tensor(&self, t: &Tensor<H>) -> Tensor<H> {
        CyclicTensor { level: t.level + 1, terms: self.insert_one(&t.terms, 0) }
    }

    /// `X₁ ∧ … ∧ X_n ↦ Σ_σ (−1)^σ X_{σ(1)} ⊗ … ⊗ X_{σ(n)}`.
    pub fn antisymmetrize(&self, xs: &[LinComb<H::Basis>]) -> Tensor<H> {
        let n = xs.len();
        let mut out = CyclicTensor::zero(n);
        for perm in (0..n).permutations(n) {
            let parts: Vec<_> = perm.iter().map(|&i| xs[i].clone()).collect();
            let term = CyclicTensor::from_parts(&parts);
            out = if permutation_sign(&perm) > 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    /// Every basis tensor of level `n` with legs from `sample_basis(degree)`.
    pub fn basis_tensors(&self, n: usize, degree: u32) -> Vec<Tensor<H>> {
        let pool = self.h.sample_basis(degree);
        (0..n)
            .map(|_| pool.iter().cloned())
            .multi_cartesian_product()
            .map(CyclicTensor::basis)
            .chain((n == 0).then(|| CyclicTensor::scalar(Rational::one())))
            .collect()
    }

    pub fn display(&self, t: &Tensor<H>) -> String {
        if t.is_zero() {
            return "0".into();
        }
        t.terms
            .iter()
            .map(|(k, c)| {
                let legs = if k.is_empty() { "1".to_string() } else { k.iter().map(|b| self.h.basis_name(b)).join("⊗") };
                format!("{c}·{legs}")
            })
            .join(" + ")
    }
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Checks every relation of the cyclic category on the given level-`n` inputs:
/// the cocyclic identities among δ, σ, τ and `τ_n^{n+1} = 1`. Each failure is
/// reported as a readable string.
pub fn check_cyclic_relations<H: HopfAlgebra>(
    m: &CyclicModule<H>,
    inputs: &[Tensor<H>],
) -> Vec<String> {
    let mut failures = Vec::new();
    let mut check = |name: String, lhs: Tensor<H>, rhs: Tensor<H>, input: &Tensor<H>| {
        if lhs != rhs {
            failures.push(format!("{name} fails on {}", m.display(input)));
        }
    };
    for t in inputs {
        let l = t.level;
        // faces out of level l (into level l + 1 = n)
        let n = l + 1;
        let face = |i: usize, x: &Tensor<H>| m.face(i, x).unwrap();
        let degen = |i: usize, x: &Tensor<H>| m.degeneracy(i, x).unwrap();
        let tau = |x: &Tensor<H>| m.tau(x);
        check("τ_n δ_0 = δ_n".into(), tau(&face(0, t)), face(n, t), t);
        for i in 1..=n {
            check(format!("τ_n δ_{i} = δ_{} τ_(n−1)", i - 1), tau(&face(i, t)), face(i - 1, &tau(t)), t);
        }
        for j in 0..=n {
            for i in 0..j {
                check(format!("δ_{j} δ_{i} = δ_{i} δ_{}", j - 1), face(j, &face(i, t)), face(i, &face(j - 1, t)), t);
            }
        }
        // degeneracies out of level l (into level l − 1 = k)
        if l >= 1 {
            let k = l - 1;
            check("τ_k σ_0 = σ_k τ²".into(), tau(&degen(0, t)), degen(k, &tau(&tau(t))), t);
            for i in 1..=k {
                check(format!("τ σ_{i} = σ_{} τ", i - 1), tau(&degen(i, t)), degen(i - 1, &tau(t)), t);
            }
        }
        if l >= 2 {
            for j in 0..l - 1 {
                for i in 0..=j {
                    check(format!("σ_{j} σ_{i} = σ_{i} σ_{}", j + 1), degen(j, &degen(i, t)), degen(i, &degen(j + 1, t)), t);
                }
            }
        }
        // σ_j δ_i on level l: δ_i into l + 1, then σ_j back to l
        for i in 0..=n {
            for j in 0..n {
                let lhs = degen(j, &face(i, t));
                let rhs = if i < j {
                    face(i, &degen(j - 1, t))
                } else if i == j || i == j + 1 {
                    t.clone()
                } else {
                    face(i - 1, &degen(j, t))
                };
                check(format!("σ_{j} δ_{i}"), lhs, rhs, t);
            }
        }
        if l >= 1 {
            let mut x = t.clone();
            for _ in 0..=l {
                x = tau(&x);
            }
            check(format!("τ_{l}^{} = 1", l + 1), x, t.clone(), t);
        }
    }
    failures
}
