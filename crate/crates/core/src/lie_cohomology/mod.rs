//! Exact Chevalley-Eilenberg (co)homology of finite-dimensional Lie algebras over ℚ,
//! with trivial coefficients or the one-dimensional module `C_δ` of a character, and the
//! truncated Weil complexes WO(n), WSO(n).
//!
//! The truncated algebras of formal vector fields provided here are finite quotients
//! only; nothing is claimed about the Gelfand-Fuchs cohomology of the infinite algebra.
//!
//! Chains live in `Λ^k L` on sorted index tuples. The boundary with coefficients in `C_δ`
//! is
//! `∂(X₁∧…∧X_n) = Σ_k (−1)^{k+1} δ(X_k) X₁∧…X̂_k…∧X_n
//!              + Σ_{i<j} (−1)^{i+j} [X_i, X_j] ∧ X₁∧…X̂_i…X̂_j…∧X_n`
//! and cochains use its transpose.

mod weil;

pub use weil::{WeilCohomology, WeilComplex, WeilElement, WeilMonomial, WeilVariant};

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra_kernel::{int, mat_rank_kernel, LinComb, QMatrix, Rational};
use crate::enveloping_dual::bracket_coefficient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("bracket index out of range: ({0}, {1})")]
    IndexOutOfRange(usize, usize),
    #[error("[x, x] must vanish, fails at generator {0}")]
    NotAntisymmetric(usize),
    #[error("Jacobi identity fails at ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("δ is not a character: δ([{0}, {1}]) ≠ 0")]
    NotCharacter(usize, usize),
    #[error("character has length {found}, expected {dim}")]
    CharacterLength { dim: usize, found: usize },
    #[error("Weil complexes are provided for 1 ≤ n ≤ {max}, got {n}")]
    WeilRange { n: usize, max: usize },
}

/// Element of `Λ^k L`, keyed by strictly increasing index tuples.
pub type Wedge = LinComb<Vec<usize>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Trivial,
    /// `C_δ` for the character attached to the algebra.
    Character,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieAlgebra {
    names: Vec<String>,
    /// `bracket[i][j]` is `[e_i, e_j]` as a dense coordinate vector.
    bracket: Vec<Vec<Vec<Rational>>>,
    character: Option<Vec<Rational>>,
}

impl FiniteLieAlgebra {
    /// Brackets listed for `i < j` or `i > j`; the rest are filled by antisymmetry or zero.
    pub fn new(names: Vec<String>, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self, LieError> {
        let d = names.len();
        let mut bracket = vec![vec![vec![Rational::zero(); d]; d]; d];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= d || j >= d {
                return Err(LieError::IndexOutOfRange(i, j));
            }
            if i == j {
                if v.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(LieError::NotAntisymmetric(i));
                }
                continue;
            }
            for (k, c) in v {
                if *k >= d {
                    return Err(LieError::IndexOutOfRange(i, *k));
                }
                bracket[i][j][*k] += c;
                bracket[j][i][*k] -= c;
            }
        }
        let l = FiniteLieAlgebra { names, bracket, character: None };
        l.check_jacobi()?;
        Ok(l)
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut sum = vec![Rational::zero(); d];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket_vec(&self.basis_vec(b), &self.basis_vec(c));
                        for (s, v) in sum.iter_mut().zip(self.bracket_vec(&self.basis_vec(a), &inner)) {
                            *s += v;
                        }
                    }
                    if sum.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Attach a character, checking `δ([x, y]) = 0` on basis pairs.
    pub fn with_character(mut self, delta: Vec<Rational>) -> Result<Self, LieError> {
        if delta.len() != self.dim() {
            return Err(LieError::CharacterLength { dim: self.dim(), found: delta.len() });
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v: Rational = self.bracket[i][j].iter().zip(&delta).map(|(a, b)| a * b).sum();
                if !v.is_zero() {
                    return Err(LieError::NotCharacter(i, j));
                }
            }
        }
        self.character = Some(delta);
        Ok(self)
    }

    pub fn abelian(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("e{i}")).collect(), &[]).expect("abelian")
    }

    /// The affine algebra on `X, Y` (indices 0, 1) with `[Y, X] = X`, `δ(X) = 0`, `δ(Y) = 1`.
    pub fn affine() -> Self {
        Self::new(vec!["X".into(), "Y".into()], &[(1, 0, vec![(0, int(1))])])
            .and_then(|l| l.with_character(vec![int(0), int(1)]))
            .expect("affine algebra")
    }

    /// `Z_lo, …, Z_hi` with `[Z_k, Z_l] = c_{kl} Z_{k+l}`, dropping `Z_{k+l}` when `k + l > hi`.
    /// Needs `lo ≥ 0` for the truncation to be a Lie algebra.
    pub fn truncated_vector_fields(lo: i32, hi: i32) -> Self {
        assert!(0 <= lo && lo <= hi, "need 0 ≤ lo ≤ hi");
        let names = (lo..=hi).map(|k| format!("Z{k}")).collect();
        let idx = |k: i32| (k - lo) as usize;
        let mut br = Vec::new();
        for k in lo..=hi {
            for l in k + 1..=hi {
                if k + l <= hi {
                    br.push((idx(k), idx(l), vec![(idx(k + l), bracket_coefficient(k, l))]));
                }
            }
        }
        Self::new(names, &br).expect("truncated vector fields")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn character(&self) -> Option<&[Rational]> {
        self.character.as_deref()
    }

    fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = int(1);
        v
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.bracket[i][j]
    }

    pub fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let c = &x[i] * &y[j];
                for (o, b) in out.iter_mut().zip(&self.bracket[i][j]) {
                    *o += &c * b;
                }
            }
        }
        out
    }

    /// `x ↦ tr(ad x)`, always a character.
    pub fn trace_ad(&self) -> Vec<Rational> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.bracket[i][j][j].clone()).sum()).collect()
    }

    /// Strictly increasing `k`-tuples of generator indices, in lexicographic order.
    pub fn wedge_basis(&self, k: usize) -> Vec<Vec<usize>> {
        (0..self.dim()).combinations(k).collect()
    }

    /// `e_{i₁} ∧ … ∧ e_{i_k}` for arbitrary indices, sorted with sign.
    pub fn wedge_monomial(idx: &[usize]) -> Wedge {
        let mut v = idx.to_vec();
        let mut sign = 1;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Wedge::zero();
        }
        Wedge::term(v, int(sign))
    }

    /// `∂` on one basis wedge with coefficients twisted by `delta` (zero for trivial).
    pub fn boundary_basis(&self, x: &[usize], delta: Option<&[Rational]>) -> Wedge {
        let n = x.len();
        let mut out = Wedge::zero();
        if let Some(delta) = delta {
            for k in 0..n {
                let d = &delta[x[k]];
                if !d.is_zero() {
                    let mut rest = x.to_vec();
                    rest.remove(k);
                    // (−1)^{k+1} with 1-based k is (−1)^k with 0-based k
                    let s = if k % 2 == 0 { d.clone() } else { -d.clone() };
                    out.add_term(rest, s);
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let br = &self.bracket[x[i]][x[j]];
                let rest: Vec<usize> = (0..n).filter(|&m| m != i && m != j).map(|m| x[m]).collect();
                // 1-based i + j has the same parity as 0-based i + j
                let sign = if (i + j) % 2 == 0 { int(1) } else { int(-1) };
                for (m, c) in br.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let mut key = vec![m];
                    key.extend_from_slice(&rest);
                    out.add_scaled(&Self::wedge_monomial(&key), &(c * &sign));
                }
            }
        }
        out
    }

    pub fn boundary(&self, w: &Wedge, delta: Option<&[Rational]>) -> Wedge {
        w.map_linear(|k| self.boundary_basis(k, delta))
    }

    fn coefficient_character(&self, coeff: Coefficients) -> Option<Vec<Rational>> {
        match coeff {
            Coefficients::Trivial => None,
            Coefficients::Character => Some(self.character.clone().unwrap_or_else(|| self.trace_ad())),
        }
    }

    /// Matrix of `∂ : Λ^k → Λ^{k−1}` in the wedge bases.
    pub fn boundary_matrix(&self, k: usize, coeff: Coefficients) -> QMatrix {
        let delta = self.coefficient_character(coeff);
        let cols = self.wedge_basis(k);
        let rows = if k == 0 { Vec::new() } else { self.wedge_basis(k - 1) };
        let mut m = QMatrix::zeros(rows.len(), cols.len());
        for (j, x) in cols.iter().enumerate() {
            for (key, c) in &self.boundary_basis(x, delta.as_deref()) {
                let i = rows.binary_search(key).expect("sorted wedge key");
                m.set(i, j, c.clone());
            }
        }
        m
    }

    /// Betti numbers `dim H_k`, `k = 0..=dim`.
    pub fn homology(&self, coeff: Coefficients) -> LieHomology {
        let d = self.dim();
        let mats: Vec<QMatrix> = (0..=d + 1).map(|k| if k <= d { self.boundary_matrix(k, coeff) } else { QMatrix::zeros(self.wedge_basis(d).len(), 0) }).collect();
        let mut betti = Vec::new();
        let mut cycles = Vec::new();
        for k in 0..=d {
            let (_, ker) = mat_rank_kernel(&mats[k]);
            let image = &mats[k + 1];
            let reps = complement_in(&ker, image);
            betti.push(reps.len());
            let basis = self.wedge_basis(k);
            cycles.push(
                reps.into_iter()
                    .map(|v| basis.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect::<Wedge>())
                    .collect(),
            );
        }
        LieHomology { betti, cycles }
    }

    /// Cohomology Betti numbers from the transposed (cochain) complex.
    pub fn cohomology_dims(&self, coeff: Coefficients) -> Vec<usize> {
        let d = self.dim();
        let ranks: Vec<usize> = (0..=d + 1).map(|k| if (1..=d).contains(&k) { self.boundary_matrix(k, coeff).transpose().rank() } else { 0 }).collect();
        // d^k : C^k → C^{k+1} is ∂_{k+1}ᵀ
        (0..=d).map(|k| self.wedge_basis(k).len() - ranks[k + 1] - ranks[k]).collect()
    }

    pub fn wedge_display(&self, w: &Wedge) -> String {
        if w.is_zero() {
            return "0".into();
        }
        w.iter()
            .map(|(k, c)| {
                let body = if k.is_empty() { "1".to_string() } else { k.iter().map(|&i| self.names[i].as_str()).join("∧") };
                format!("{c}·{body}")
            })
            .join(" + ")
    }
}

/// Homology dimensions and explicit cycle representatives, one list per degree.
#[derive(Clone, Debug)]
pub struct LieHomology {
    pub betti: Vec<usize>,
    pub cycles: Vec<Vec<Wedge>>,
}

/// Vectors from `ker` that extend a basis of the column space of `image` to a basis of
/// `span(image) + span(ker)`; their classes span `ker / image` when image ⊆ ker.
pub(crate) fn complement_in(ker: &[Vec<Rational>], image: &QMatrix) -> Vec<Vec<Rational>> {
    let mut acc = image.clone();
    let mut rank = acc.rank();
    let mut out = Vec::new();
    for v in ker {
        let col = QMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect(), 1);
        let next = acc.hconcat(&col);
        let r = next.rank();
        if r > rank {
            acc = next;
            rank = r;
            out.push(v.clone());
        }
    }
    out
}
