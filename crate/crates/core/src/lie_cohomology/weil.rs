use itertools::Itertools;
use num_traits::Zero;

use super::{complement_in, LieError};
use crate::algebra_kernel::{int, mat_rank_kernel, LinComb, QMatrix, Rational};

const MAX_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeilVariant {
    /// `E(h₁, h₃, …) ⊗ P(c₁, …, c_n)`, truncated above weight 2n.
    WO,
    /// WO(n) with a class χ of degree n and `χ² = c_n` when n is even; WO(n) when n is odd.
    WSO,
}

/// `h_{i₁}⋯h_{i_r} · c₁^{a₁}⋯c_n^{a_n} · χ^e` with `i₁ < … < i_r` odd.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeilMonomial {
    pub h: Vec<usize>,
    pub c: Vec<u32>,
    pub chi: bool,
}

impl WeilMonomial {
    pub fn degree(&self, n: usize) -> usize {
        self.h.iter().map(|i| 2 * i - 1).sum::<usize>() + self.weight(n)
    }

    /// Weight of the polynomial part: `c_i` counts `2i`, χ counts `n`.
    pub fn weight(&self, n: usize) -> usize {
        self.c.iter().enumerate().map(|(i, &a)| 2 * (i + 1) * a as usize).sum::<usize>() + if self.chi { n } else { 0 }
    }

    pub fn name(&self) -> String {
        let mut parts: Vec<String> = self.h.iter().map(|i| format!("h{i}")).collect();
        for (i, &a) in self.c.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("c{}", i + 1)),
                a => parts.push(format!("c{}^{a}", i + 1)),
            }
        }
        if self.chi {
            parts.push("χ".into());
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("")
        }
    }
}

pub type WeilElement = LinComb<WeilMonomial>;

/// A truncated Weil complex with its basis grouped by degree.
#[derive(Clone, Debug)]
pub struct WeilComplex {
    n: usize,
    variant: WeilVariant,
    by_degree: Vec<Vec<WeilMonomial>>,
}

impl WeilComplex {
    pub fn new(n: usize, variant: WeilVariant) -> Result<Self, LieError> {
        if n == 0 || n > MAX_N {
            return Err(LieError::WeilRange { n, max: MAX_N });
        }
        let with_chi = variant == WeilVariant::WSO && n % 2 == 0;
        let odd: Vec<usize> = (1..=n).step_by(2).collect();
        let mut polys = Vec::new();
        let mut exps = vec![0u32; n];
        collect_polys(n, 0, 0, &mut exps, &mut polys);
        let mut all = Vec::new();
        for r in 0..=odd.len() {
            for hs in odd.iter().copied().combinations(r) {
                for c in &polys {
                    for chi in [false, true] {
                        if chi && !with_chi {
                            continue;
                        }
                        let m = WeilMonomial { h: hs.clone(), c: c.clone(), chi };
                        if m.weight(n) <= 2 * n {
                            all.push(m);
                        }
                    }
                }
            }
        }
        let top = all.iter().map(|m| m.degree(n)).max().unwrap_or(0);
        let mut by_degree = vec![Vec::new(); top + 1];
        for m in all {
            by_degree[m.degree(n)].push(m);
        }
        for v in &mut by_degree {
            v.sort();
        }
        Ok(WeilComplex { n, variant, by_degree })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> WeilVariant {
        self.variant
    }

    pub fn top_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn basis(&self, degree: usize) -> &[WeilMonomial] {
        self.by_degree.get(degree).map_or(&[], |v| v.as_slice())
    }

    fn truncate(&self, e: WeilElement) -> WeilElement {
        e.filter(|m| m.weight(self.n) <= 2 * self.n)
    }

    pub fn generator_h(&self, i: usize) -> WeilElement {
        LinComb::basis(WeilMonomial { h: vec![i], c: vec![0; self.n], chi: false })
    }

    pub fn generator_c(&self, i: usize) -> WeilElement {
        let mut c = vec![0; self.n];
        c[i - 1] = 1;
        self.truncate(LinComb::basis(WeilMonomial { h: Vec::new(), c, chi: false }))
    }

    pub fn chi(&self) -> Option<WeilElement> {
        (self.variant == WeilVariant::WSO && self.n % 2 == 0)
            .then(|| LinComb::basis(WeilMonomial { h: Vec::new(), c: vec![0; self.n], chi: true }))
    }

    /// Graded-commutative product, with `χ² = c_n` and truncation above weight 2n.
    pub fn mul(&self, a: &WeilElement, b: &WeilElement) -> WeilElement {
        let out = a.bilinear(b, |x, y| {
            if x.h.iter().any(|i| y.h.contains(i)) {
                return LinComb::zero();
            }
            // sign of sorting the concatenated odd generators
            let mut inversions = 0;
            for i in &x.h {
                inversions += y.h.iter().filter(|j| *j < i).count();
            }
            let mut h: Vec<usize> = x.h.iter().chain(&y.h).copied().collect();
            h.sort();
            let mut c: Vec<u32> = x.c.iter().zip(&y.c).map(|(p, q)| p + q).collect();
            let chi = match (x.chi, y.chi) {
                (true, true) => {
                    c[self.n - 1] += 1;
                    false
                }
                (p, q) => p || q,
            };
            LinComb::term(WeilMonomial { h, c, chi }, int(if inversions % 2 == 0 { 1 } else { -1 }))
        });
        self.truncate(out)
    }

    /// `d h_i = c_i`, `d c_i = 0`, `d χ = 0`, extended as a graded derivation.
    pub fn d(&self, e: &WeilElement) -> WeilElement {
        let out = e.map_linear(|m| {
            let mut acc = WeilElement::zero();
            for (pos, &i) in m.h.iter().enumerate() {
                let mut h = m.h.clone();
                h.remove(pos);
                let mut c = m.c.clone();
                c[i - 1] += 1;
                acc.add_term(WeilMonomial { h, c, chi: m.chi }, int(if pos % 2 == 0 { 1 } else { -1 }));
            }
            acc
        });
        self.truncate(out)
    }

    /// Matrix of `d` from degree `k` to `k + 1`.
    pub fn d_matrix(&self, k: usize) -> QMatrix {
        let cols = self.basis(k);
        let rows = self.basis(k + 1);
        let mut m = QMatrix::zeros(rows.len(), cols.len());
        for (j, x) in cols.iter().enumerate() {
            for (key, c) in &self.d(&LinComb::basis(x.clone())) {
                let i = rows.binary_search(key).expect("image lies in the next degree");
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn to_vector(&self, e: &WeilElement, degree: usize) -> Vec<Rational> {
        let basis = self.basis(degree);
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, c) in e {
            let i = basis.binary_search(m).expect("element of the given degree");
            v[i] = c.clone();
        }
        v
    }

    /// Whether a cocycle of the given degree is a coboundary.
    pub fn is_exact(&self, e: &WeilElement, degree: usize) -> bool {
        if degree == 0 {
            return e.is_zero();
        }
        self.d_matrix(degree - 1).solve(&self.to_vector(e, degree)).is_some()
    }

    /// Betti numbers and cocycle representatives per degree.
    pub fn cohomology(&self) -> WeilCohomology {
        let mut betti = Vec::new();
        let mut reps = Vec::new();
        for k in 0..=self.top_degree() {
            let (_, ker) = mat_rank_kernel(&self.d_matrix(k));
            let image = if k == 0 { QMatrix::zeros(self.basis(0).len(), 0) } else { self.d_matrix(k - 1) };
            let found = complement_in(&ker, &image);
            betti.push(found.len());
            reps.push(
                found
                    .into_iter()
                    .map(|v| self.basis(k).iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect::<WeilElement>())
                    .collect(),
            );
        }
        WeilCohomology { betti, representatives: reps }
    }

    pub fn display(&self, e: &WeilElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.iter().map(|(m, c)| format!("{c}·{}", m.name())).join(" + ")
    }
}

#[derive(Clone, Debug)]
pub struct WeilCohomology {
    pub betti: Vec<usize>,
    pub representatives: Vec<Vec<WeilElement>>,
}

fn collect_polys(n: usize, i: usize, weight: usize, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == n {
        out.push(exps.clone());
        return;
    }
    let step = 2 * (i + 1);
    let mut a = 0;
    while weight + a * step <= 2 * n {
        exps[i] = a as u32;
        collect_polys(n, i + 1, weight + a * step, exps, out);
        a += 1;
    }
    exps[i] = 0;
}
