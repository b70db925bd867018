#![allow(dead_code)]

use hopfcyc::algebra_kernel::{int, LinComb, Rational};
use hopfcyc::hopf_h1::{DeltaMono, HElement, HTensor, PbwMonomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator letters of H(1) for the word-rewriting oracle.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Gen {
    D(u32),
    X,
    Y,
}

fn rank(g: Gen) -> (u32, u32) {
    match g {
        Gen::D(n) => (0, n),
        Gen::X => (1, 0),
        Gen::Y => (2, 0),
    }
}

/// Normal form of a word by repeated local rewriting with only the defining relations
/// Yδ_n = δ_n(Y+n), Xδ_n = δ_nX + δ_{n+1}, YX = X(Y+1), δ_mδ_n = δ_nδ_m.
pub fn rewrite_words(input: Vec<(Vec<Gen>, Rational)>) -> HElement {
    let mut work = input;
    let mut out = HElement::zero();
    while let Some((w, c)) = work.pop() {
        let pos = (0..w.len().saturating_sub(1)).find(|&i| rank(w[i]) > rank(w[i + 1]));
        let Some(i) = pos else {
            out.add_term(word_to_mono(&w), c);
            continue;
        };
        let (a, b) = (w[i], w[i + 1]);
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        work.push((swapped, c.clone()));
        let extra: Option<(Vec<Gen>, Rational)> = match (a, b) {
            (Gen::Y, Gen::D(n)) => Some((vec![Gen::D(n)], int(n as i64))),
            (Gen::X, Gen::D(n)) => Some((vec![Gen::D(n + 1)], int(1))),
            (Gen::Y, Gen::X) => Some((vec![Gen::X], int(1))),
            (Gen::D(_), Gen::D(_)) => None,
            _ => unreachable!(),
        };
        if let Some((mid, k)) = extra {
            let mut nw = w[..i].to_vec();
            nw.extend(mid);
            nw.extend_from_slice(&w[i + 2..]);
            work.push((nw, c * k));
        }
    }
    out
}

pub fn word_to_mono(w: &[Gen]) -> PbwMonomial {
    let mut a: Vec<u32> = Vec::new();
    let (mut x, mut y) = (0, 0);
    for g in w {
        match *g {
            Gen::D(n) => {
                if a.len() < n as usize {
                    a.resize(n as usize, 0);
                }
                a[n as usize - 1] += 1;
            }
            Gen::X => x += 1,
            Gen::Y => y += 1,
        }
    }
    PbwMonomial::new(DeltaMono::from_exponents(a), x, y)
}

pub fn mono_to_word(m: &PbwMonomial) -> Vec<Gen> {
    let mut w: Vec<Gen> = m.delta.factors().into_iter().map(Gen::D).collect();
    w.extend(std::iter::repeat(Gen::X).take(m.x as usize));
    w.extend(std::iter::repeat(Gen::Y).take(m.y as usize));
    w
}

/// Product through the rewriting oracle.
pub fn oracle_product(u: &HElement, v: &HElement) -> HElement {
    let mut words = Vec::new();
    for (a, c) in u {
        for (b, d) in v {
            let mut w = mono_to_word(a);
            w.extend(mono_to_word(b));
            words.push((w, c * d));
        }
    }
    rewrite_words(words)
}

pub fn oracle_tensor_product(s: &HTensor, t: &HTensor) -> HTensor {
    let mut out = HTensor::zero();
    for (ka, c) in s {
        for (kb, d) in t {
            let mut acc = HTensor::basis(Vec::new());
            for (x, y) in ka.iter().zip(kb) {
                let p = oracle_product(&HElement::basis(x.clone()), &HElement::basis(y.clone()));
                let mut next = HTensor::zero();
                for (k, e) in &acc {
                    for (m, f) in &p {
                        let mut key = k.clone();
                        key.push(m.clone());
                        next.add_term(key, e * f);
                    }
                }
                acc = next;
            }
            out.add_scaled(&acc, &(c * d));
        }
    }
    out
}

pub fn parse_delta_poly(terms: &[(i64, i64, &[u32])]) -> HElement {
    LinComb::from_terms(terms.iter().map(|(n, d, a)| {
        (PbwMonomial::delta_only(DeltaMono::from_exponents(a.to_vec())), hopfcyc::rat(*n, *d))
    }))
}
