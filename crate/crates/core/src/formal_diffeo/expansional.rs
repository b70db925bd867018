//! The expansional series for the left multiplication of `f(s, t)` by a group-like
//! element, with `ψ = φ⁻¹`:
//!
//! `(φ f)(s,t) = Σ_n ∫_{0≤s₁≤…≤s_n≤t} Π g(s_i) O_{s_n}···O_{s₁} f`, `g = ψ''/ψ'`,
//! `O_v = ∂_s + (t − v)∂_t`.
//!
//! The nested integrals are computed by the recursion
//! `G_n(s,t,u) = ∫₀^u g(v) O_v G_{n−1}(s,t,v) dv`, `G₀ = f`, and summed at `u = t`.
//! Polynomials use variable 0 for `s`, 1 for `t`, 2 for `u` and 3 for `v`.

use super::{DiffeoError, DiffeoJet};
use crate::algebra_kernel::{int, CommPoly, Exponents, TruncSeries};

const S: u32 = 0;
const T: u32 = 1;
const U: u32 = 2;
const V: u32 = 3;

fn time_degree(e: &Exponents) -> u32 {
    e.get(T) + e.get(U) + e.get(V)
}

fn truncate(p: &CommPoly, order: u32) -> CommPoly {
    p.retain(|e| time_degree(e) <= order)
}

fn series_in(var: u32, s: &TruncSeries) -> CommPoly {
    CommPoly::from_terms(s.coeffs().iter().enumerate().map(|(k, c)| (Exponents::var_pow(var, k as u32), c.clone())))
}

fn check_order(p: &DiffeoJet, order: u32) -> Result<(), DiffeoError> {
    if p.order() < order as usize + 1 {
        return Err(DiffeoError::BeyondTruncation(order, order as usize + 1, p.order()));
    }
    Ok(())
}

/// The terms `G_n(s, t, t)` for `n = 0, 1, …` until they vanish below `t`-degree `order`.
pub fn expansional_terms(p: &DiffeoJet, f: &CommPoly, order: u32) -> Result<Vec<CommPoly>, DiffeoError> {
    check_order(p, order)?;
    let g = series_in(V, &p.log_derivative_slope().truncate(order as usize));
    let t_minus_v = &CommPoly::var(T) - &CommPoly::var(V);
    let mut g_prev = truncate(f, order);
    let mut out = vec![g_prev.clone()];
    while !g_prev.is_zero() {
        let h = g_prev.substitute(U, &CommPoly::var(V));
        let oh = &h.derivative(S) + &(&t_minus_v * &h.derivative(T));
        let integrand = truncate(&(&oh * &g), order);
        let mut next = CommPoly::zero();
        for (e, c) in integrand.terms() {
            let k = e.get(V);
            let rest = Exponents::from_pairs(e.iter().filter(|(x, _)| *x != V));
            let e2 = rest.mul(&Exponents::var_pow(U, k + 1));
            next = next + CommPoly::monomial(e2, c / int(k as i64 + 1));
        }
        g_prev = truncate(&next, order);
        out.push(g_prev.substitute(U, &CommPoly::var(T)));
    }
    out.pop();
    Ok(out)
}

/// Sum of the expansional series through `t`-degree `order`.
pub fn expansional_product(p: &DiffeoJet, f: &CommPoly, order: u32) -> Result<CommPoly, DiffeoError> {
    let terms = expansional_terms(p, f, order)?;
    Ok(truncate(&terms.into_iter().fold(CommPoly::zero(), |a, b| a + b), order))
}

/// `f(s + log ψ'(t), ψ(t))` through `t`-degree `order`.
pub fn expansional_closed_form(p: &DiffeoJet, f: &CommPoly, order: u32) -> Result<CommPoly, DiffeoError> {
    check_order(p, order)?;
    let psi = series_in(T, &p.series().truncate(order as usize));
    let shift = &CommPoly::var(S) + &series_in(T, &p.log_derivative().truncate(order as usize));
    let mut out = CommPoly::zero();
    // substitute term by term so that powers of ψ(t) and of the shift are truncated early
    for (e, c) in f.terms() {
        let mut acc = CommPoly::constant(c.clone());
        for _ in 0..e.get(T) {
            acc = truncate(&(&acc * &psi), order);
        }
        for _ in 0..e.get(S) {
            acc = truncate(&(&acc * &shift), order);
        }
        out = out + acc;
    }
    Ok(out)
}
