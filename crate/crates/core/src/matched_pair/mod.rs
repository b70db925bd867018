//! Finite matched pairs `G = G₁G₂`, the bicrossed-product Hopf algebra H(G) on the
//! basis `ε_a X_k`, its dual crossed product on `e_k U*_a`, and the maps θ and t
//! relating Hopf tensors to invariant cochains.
//!
//! Conventions: `a k = a(k) (a·k)` for `a ∈ G₂`, `k ∈ G₁`. In H(G),
//! `X_k ε_b = ε_{b·k⁻¹} X_k`; in the dual, `U*_a f = f(a(·)) U*_a` and
//! `U*_{ab} = U*_b U*_a`. The pairing `⟨ε_b X_l, e_k U*_a⟩ = [l = k][b = a]`
//! makes the two bases dual.

mod group;
mod hopf;
mod theta;

pub use group::{FiniteGroup, Factorization};
pub use hopf::{BTensor, BElem, BicrossedHopf};
pub use theta::{kernels_agree, theta_matrix, t_map, t_matrix, tensor_basis, TraceChoice};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchedPairError {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("{0} is not a subgroup")]
    NotSubgroup(&'static str),
    #[error("G₁G₂ is not an exact factorization of G")]
    NotExact,
    #[error("cannot parse group table: {0}")]
    Parse(String),
    #[error("Hopf axiom violated: {0}")]
    AxiomFailure(String),
    #[error("unknown built-in factorization `{0}`")]
    UnknownBuiltin(String),
    #[error("τ₀ is not relatively invariant under {0}")]
    NoModularCharacter(String),
}
