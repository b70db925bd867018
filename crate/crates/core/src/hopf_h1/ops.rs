use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;
use rand::Rng;

use super::monomial::{monomials_up_to_degree, DeltaMono, PbwMonomial};
use crate::algebra_kernel::{binomial, int, rat, LinComb, Rational};

pub type HElement = LinComb<PbwMonomial>;
/// Element of `H^{⊗k}`; every key has length `k`.
pub type HTensor = LinComb<Vec<PbwMonomial>>;

/// Coproducts of δ_n are cached up to this index; larger ones are rebuilt from the top of the cache.
const DELTA_CACHE_LIMIT: u32 = 12;

pub fn h_one() -> HElement {
    HElement::basis(PbwMonomial::one())
}

pub fn h_scalar(c: Rational) -> HElement {
    HElement::term(PbwMonomial::one(), c)
}

pub fn h_x() -> HElement {
    HElement::basis(PbwMonomial::new(DeltaMono::one(), 1, 0))
}

pub fn h_y() -> HElement {
    HElement::basis(PbwMonomial::new(DeltaMono::one(), 0, 1))
}

pub fn delta(n: u32) -> HElement {
    HElement::basis(PbwMonomial::delta_only(DeltaMono::generator(n)))
}

pub fn h_pow(h: &HElement, e: u32) -> HElement {
    let mut out = h_one();
    for _ in 0..e {
        out = normal_product(&out, h);
    }
    out
}

pub fn is_delta_polynomial(h: &HElement) -> bool {
    h.keys().all(|m| m.x == 0 && m.y == 0)
}

/// Part of a δ-polynomial of total δ-weight `w`.
pub fn delta_poly_degree_part(h: &HElement, w: u32) -> HElement {
    h.filter(|m| m.weight() == w)
}

/// ad X on a δ-monomial: δ_n ↦ δ_{n+1} extended as a derivation.
fn ad_x_delta(d: &LinComb<DeltaMono>) -> LinComb<DeltaMono> {
    let mut out = LinComb::zero();
    for (m, c) in d {
        for (i, &a) in m.exponents().iter().enumerate() {
            if a > 0 {
                out.add_term(m.shift_one(i as u32 + 1), c * int(a as i64));
            }
        }
    }
    out
}

fn mono_product_raw(m1: &PbwMonomial, m2: &PbwMonomial) -> HElement {
    // δ^a X^b Y^c · δ^a' X^b' Y^c'
    //   = Σ_i C(b,i) δ^a (ad X)^i(δ^a') X^{b-i+b'} (Y + w' + b')^c Y^c'
    let shift = int((m2.delta.weight() + m2.x) as i64);
    let mut y_part: Vec<(u32, Rational)> = Vec::new();
    for j in 0..=m1.y {
        let mut coeff = Rational::from_integer(binomial(m1.y as u64, j as u64));
        for _ in 0..(m1.y - j) {
            coeff *= &shift;
        }
        if !coeff.is_zero() {
            y_part.push((j + m2.y, coeff));
        }
    }
    let mut out = HElement::zero();
    let mut dpoly = LinComb::basis(m2.delta.clone());
    for i in 0..=m1.x {
        if dpoly.is_zero() {
            break;
        }
        let bin = Rational::from_integer(binomial(m1.x as u64, i as u64));
        for (d, c) in &dpoly {
            let delta = m1.delta.mul(d);
            for (yp, yc) in &y_part {
                out.add_term(PbwMonomial::new(delta.clone(), m1.x - i + m2.x, *yp), &bin * c * yc);
            }
        }
        dpoly = ad_x_delta(&dpoly);
    }
    out
}

type ProductCache = RwLock<HashMap<(PbwMonomial, PbwMonomial), HElement>>;

fn product_cache() -> &'static ProductCache {
    static C: OnceLock<ProductCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn mono_product(m1: &PbwMonomial, m2: &PbwMonomial) -> HElement {
    if m1.is_one() {
        return HElement::basis(m2.clone());
    }
    if m2.is_one() {
        return HElement::basis(m1.clone());
    }
    let key = (m1.clone(), m2.clone());
    if let Some(v) = product_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let v = mono_product_raw(m1, m2);
    product_cache().write().unwrap().insert(key, v.clone());
    v
}

/// Product in H(1), returned in PBW normal form.
pub fn normal_product(u: &HElement, v: &HElement) -> HElement {
    u.bilinear(v, mono_product)
}

/// Componentwise product in `H^{⊗k}`.
pub fn tensor_mul(a: &HTensor, b: &HTensor) -> HTensor {
    a.bilinear(b, |ka, kb| {
        assert_eq!(ka.len(), kb.len(), "tensor legs differ");
        let mut acc = HTensor::basis(Vec::new());
        for (x, y) in ka.iter().zip(kb) {
            acc = tensor_extend(&acc, &mono_product(x, y));
        }
        acc
    })
}

/// `t ⊗ h`.
fn tensor_extend(t: &HTensor, h: &HElement) -> HTensor {
    t.bilinear(h, |k, m| {
        let mut key = k.clone();
        key.push(m.clone());
        HTensor::basis(key)
    })
}

/// `h₁ ⊗ … ⊗ h_k` for elements of H.
pub fn tensor_of(parts: &[HElement]) -> HTensor {
    parts.iter().fold(HTensor::basis(Vec::new()), |acc, h| tensor_extend(&acc, h))
}

pub fn tensor_flip(t: &HTensor) -> HTensor {
    t.map_keys(|k| k.iter().rev().cloned().collect())
}

/// Apply ε to leg `leg` (0-based), removing it.
pub fn tensor_counit_leg(t: &HTensor, leg: usize) -> HTensor {
    let mut out = HTensor::zero();
    for (k, c) in t {
        if k[leg].is_one() {
            let mut key = k.clone();
            key.remove(leg);
            out.add_term(key, c.clone());
        }
    }
    out
}

fn gen_tensor(pairs: &[(PbwMonomial, PbwMonomial, i64)]) -> HTensor {
    HTensor::from_terms(pairs.iter().map(|(a, b, c)| (vec![a.clone(), b.clone()], int(*c))))
}

fn delta_x() -> HTensor {
    let one = PbwMonomial::one();
    let x = PbwMonomial::new(DeltaMono::one(), 1, 0);
    let y = PbwMonomial::new(DeltaMono::one(), 0, 1);
    let d1 = PbwMonomial::delta_only(DeltaMono::generator(1));
    gen_tensor(&[(x.clone(), one.clone(), 1), (one, x, 1), (d1, y, 1)])
}

fn delta_y() -> HTensor {
    let one = PbwMonomial::one();
    let y = PbwMonomial::new(DeltaMono::one(), 0, 1);
    gen_tensor(&[(y.clone(), one.clone(), 1), (one, y, 1)])
}

fn delta_delta1() -> HTensor {
    let one = PbwMonomial::one();
    let d1 = PbwMonomial::delta_only(DeltaMono::generator(1));
    gen_tensor(&[(d1.clone(), one.clone(), 1), (one, d1, 1)])
}

fn commutator_step(dx: &HTensor, dn: &HTensor) -> HTensor {
    &tensor_mul(dx, dn) - &tensor_mul(dn, dx)
}

fn delta_cache() -> &'static RwLock<Vec<HTensor>> {
    static C: OnceLock<RwLock<Vec<HTensor>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(vec![delta_delta1()]))
}

/// `Δδ_n`, via `Δδ_{n+1} = [ΔX, Δδ_n]`.
fn coproduct_delta_gen(n: u32) -> HTensor {
    assert!(n >= 1);
    {
        let cache = delta_cache().read().unwrap();
        if let Some(t) = cache.get(n as usize - 1) {
            return t.clone();
        }
    }
    let dx = delta_x();
    let mut cache = delta_cache().write().unwrap();
    while (cache.len() as u32) < n.min(DELTA_CACHE_LIMIT) {
        let next = commutator_step(&dx, cache.last().unwrap());
        cache.push(next);
    }
    let mut t = cache.last().unwrap().clone();
    for _ in (cache.len() as u32)..n {
        t = commutator_step(&dx, &t);
    }
    t
}

type CoproductCache = RwLock<HashMap<PbwMonomial, HTensor>>;

fn coproduct_cache() -> &'static CoproductCache {
    static C: OnceLock<CoproductCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn coproduct_mono(m: &PbwMonomial) -> HTensor {
    if m.is_one() {
        return HTensor::basis(vec![PbwMonomial::one(), PbwMonomial::one()]);
    }
    if let Some(t) = coproduct_cache().read().unwrap().get(m) {
        return t.clone();
    }
    // peel the last PBW factor: m = rest · g
    let (rest, g) = if m.y > 0 {
        (PbwMonomial::new(m.delta.clone(), m.x, m.y - 1), delta_y())
    } else if m.x > 0 {
        (PbwMonomial::new(m.delta.clone(), m.x - 1, 0), delta_x())
    } else {
        let n = m.delta.exponents().len() as u32;
        let mut a = m.delta.exponents().to_vec();
        a[n as usize - 1] -= 1;
        (PbwMonomial::delta_only(DeltaMono::from_exponents(a)), coproduct_delta_gen(n))
    };
    let t = tensor_mul(&coproduct_mono(&rest), &g);
    coproduct_cache().write().unwrap().insert(m.clone(), t.clone());
    t
}

/// Apply Δ to leg `leg` (0-based) of a tensor, producing one more leg.
pub fn coproduct_leg(t: &HTensor, leg: usize) -> HTensor {
    t.map_linear(|k| {
        let d = coproduct_mono(&k[leg]);
        d.map_keys(|pair| {
            let mut key = Vec::with_capacity(k.len() + 1);
            key.extend_from_slice(&k[..leg]);
            key.extend(pair.iter().cloned());
            key.extend_from_slice(&k[leg + 1..]);
            key
        })
    })
}

/// Iterated coproduct `Δ^{fold}`: H → H^{⊗(fold+1)}; `fold = 0` is the identity.
pub fn coproduct(h: &HElement, fold: usize) -> HTensor {
    let mut t = h.map_keys(|m| vec![m.clone()]);
    for i in 0..fold {
        t = coproduct_leg(&t, i);
    }
    t
}

/// Δ computed from the defining recursion with no memoization; reference path for tests.
pub fn coproduct_uncached(h: &HElement) -> HTensor {
    let dx = delta_x();
    let dy = delta_y();
    let mut gens: Vec<HTensor> = vec![delta_delta1()];
    h.map_linear(|m| {
        let mut acc = HTensor::basis(vec![PbwMonomial::one(), PbwMonomial::one()]);
        for n in m.delta.factors() {
            while gens.len() < n as usize {
                let next = commutator_step(&dx, gens.last().unwrap());
                gens.push(next);
            }
            acc = tensor_mul(&acc, &gens[n as usize - 1]);
        }
        for _ in 0..m.x {
            acc = tensor_mul(&acc, &dx);
        }
        for _ in 0..m.y {
            acc = tensor_mul(&acc, &dy);
        }
        acc
    })
}

pub fn counit(h: &HElement) -> Rational {
    h.coeff(&PbwMonomial::one())
}

fn antipode_delta_cache() -> &'static RwLock<Vec<HElement>> {
    static C: OnceLock<RwLock<Vec<HElement>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(Vec::new()))
}

/// `S(δ_n)` from `m(S⊗id)Δδ_n = 0`.
fn antipode_delta_gen(n: u32) -> HElement {
    if let Some(s) = antipode_delta_cache().read().unwrap().get(n as usize - 1) {
        return s.clone();
    }
    let known = antipode_delta_cache().read().unwrap().len() as u32;
    for k in (known + 1)..=n {
        let dn = coproduct_delta_gen(k);
        let mut s = -delta(k);
        for (pair, c) in &dn {
            if pair[0].is_one() {
                continue; // the 1 ⊗ δ_k term contributes δ_k, already accounted
            }
            if pair[0] == PbwMonomial::delta_only(DeltaMono::generator(k)) {
                continue; // solving for this term
            }
            debug_assert!(pair[0].x == 0 && pair[0].y == 0 && pair[1].x == 0 && pair[1].y == 0);
            let s1 = antipode_delta_mono(&pair[0].delta);
            s -= &normal_product(&s1, &HElement::basis(pair[1].clone())).scale(c);
        }
        let mut cache = antipode_delta_cache().write().unwrap();
        if cache.len() as u32 == k - 1 {
            cache.push(s);
        }
    }
    antipode_delta_cache().read().unwrap()[n as usize - 1].clone()
}

fn antipode_delta_mono(d: &DeltaMono) -> HElement {
    let mut acc = h_one();
    for n in d.factors() {
        acc = normal_product(&acc, &antipode_delta_gen(n));
    }
    acc
}

fn antipode_mono(m: &PbwMonomial) -> HElement {
    // S(δ^a X^b Y^c) = S(Y)^c S(X)^b S(δ^a)
    let sy = -h_y();
    let sx = &(-h_x()) + &normal_product(&delta(1), &h_y());
    let mut acc = h_pow(&sy, m.y);
    acc = normal_product(&acc, &h_pow(&sx, m.x));
    normal_product(&acc, &antipode_delta_mono(&m.delta))
}

pub fn antipode(h: &HElement) -> HElement {
    h.map_linear(antipode_mono)
}

/// The character δ(Y) = 1, δ(X) = δ(δ_n) = 0.
pub fn modular_character(h: &HElement) -> Rational {
    let mut s = Rational::zero();
    for (m, c) in h {
        if m.delta.is_one() && m.x == 0 {
            s += c;
        }
    }
    s
}

/// `S̃ = S∘σ` where σ = (δ⊗id)Δ is the automorphism Y ↦ Y + 1 fixing X and δ_n.
pub fn twisted_antipode(h: &HElement) -> HElement {
    let shifted = h.map_linear(|m| {
        let mut acc = HElement::zero();
        for j in 0..=m.y {
            acc.add_term(
                PbwMonomial::new(m.delta.clone(), m.x, j),
                Rational::from_integer(binomial(m.y as u64, j as u64)),
            );
        }
        acc
    });
    antipode(&shifted)
}

/// `S̃(h) = Σ δ(h₍₁₎) S(h₍₂₎)` read directly off the coproduct.
pub fn twisted_antipode_convolution(h: &HElement) -> HElement {
    let t = coproduct(h, 1);
    let mut out = HElement::zero();
    for (k, c) in &t {
        let d = modular_character(&HElement::basis(k[0].clone()));
        if !d.is_zero() {
            out.add_scaled(&antipode(&HElement::basis(k[1].clone())), &(c * d));
        }
    }
    out
}

/// Random element with up to `terms` PBW monomials of degree ≤ `max_degree`
/// and small rational coefficients.
pub fn random_element<R: Rng>(rng: &mut R, max_degree: u32, terms: usize) -> HElement {
    let pool = monomials_up_to_degree(max_degree);
    let mut out = HElement::zero();
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())].clone();
        let num = rng.gen_range(-4i64..=4);
        let den = rng.gen_range(1i64..=3);
        out.add_term(m, rat(num, den));
    }
    if out.is_zero() {
        out = h_one();
    }
    out
}
