//! The Hopf algebra H(1): generators X, Y, δ_n (n ≥ 1) with
//! `[Y,X] = X`, `[Y,δ_n] = n δ_n`, `[X,δ_n] = δ_{n+1}`, `[δ_k,δ_l] = 0`,
//! coproduct `ΔY = Y⊗1 + 1⊗Y`, `ΔX = X⊗1 + 1⊗X + δ₁⊗Y`, `Δδ₁ = δ₁⊗1 + 1⊗δ₁`,
//! and `Δδ_{n+1} = [ΔX, Δδ_n]`.
//!
//! Elements are kept in the PBW basis `δ₁^{a₁}···δ_k^{a_k} X^b Y^c`.

mod monomial;
mod ops;

pub use monomial::{monomials_up_to_degree, DeltaMono, PbwMonomial};
pub use ops::{
    antipode, coproduct, coproduct_leg, coproduct_uncached, counit, delta, delta_poly_degree_part, h_one, h_pow,
    h_scalar, h_x, h_y, is_delta_polynomial, modular_character, normal_product, random_element,
    tensor_counit_leg, tensor_flip, tensor_mul, tensor_of, twisted_antipode, twisted_antipode_convolution,
    HElement, HTensor,
};
