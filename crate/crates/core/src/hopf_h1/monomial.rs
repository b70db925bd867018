use std::fmt;

/// Exponent vector `(a₁, …, a_k)` of a δ-monomial, without trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DeltaMono(Vec<u32>);

impl DeltaMono {
    pub fn one() -> Self {
        DeltaMono(Vec::new())
    }

    pub fn from_exponents(mut a: Vec<u32>) -> Self {
        while a.last() == Some(&0) {
            a.pop();
        }
        DeltaMono(a)
    }

    /// The single generator δ_n.
    pub fn generator(n: u32) -> Self {
        assert!(n >= 1, "δ_n is indexed from 1");
        let mut a = vec![0; n as usize];
        a[n as usize - 1] = 1;
        DeltaMono(a)
    }

    pub fn exponent(&self, n: u32) -> u32 {
        if n == 0 {
            return 0;
        }
        self.0.get(n as usize - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &DeltaMono) -> DeltaMono {
        let len = self.0.len().max(other.0.len());
        let a = (0..len)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        DeltaMono(a)
    }

    /// `Σ j·a_j`, the eigenvalue of ad Y.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, a)| (i as u32 + 1) * a).sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Replace one factor δ_n by δ_{n+1}.
    pub(crate) fn shift_one(&self, n: u32) -> DeltaMono {
        let mut a = self.0.clone();
        if a.len() <= n as usize {
            a.resize(n as usize + 1, 0);
        }
        a[n as usize - 1] -= 1;
        a[n as usize] += 1;
        DeltaMono::from_exponents(a)
    }

    /// Generators with multiplicity, in increasing index.
    pub fn factors(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &a) in self.0.iter().enumerate() {
            for _ in 0..a {
                out.push(i as u32 + 1);
            }
        }
        out
    }
}

impl fmt::Display for DeltaMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &a) in self.0.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("δ{}", i + 1)),
                _ => parts.push(format!("δ{}^{}", i + 1, a)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// PBW basis element `δ^a X^b Y^c`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PbwMonomial {
    pub delta: DeltaMono,
    pub x: u32,
    pub y: u32,
}

impl PbwMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(delta: DeltaMono, x: u32, y: u32) -> Self {
        PbwMonomial { delta, x, y }
    }

    pub fn delta_only(delta: DeltaMono) -> Self {
        PbwMonomial { delta, x: 0, y: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.delta.is_one() && self.x == 0 && self.y == 0
    }

    /// `Σ j·a_j + b`; the ad Y eigenvalue of the δ,X part.
    pub fn weight(&self) -> u32 {
        self.delta.weight() + self.x
    }

    /// Weight with Y counted once; finitely many monomials share each value.
    pub fn degree(&self) -> u32 {
        self.weight() + self.y
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.delta.is_one() {
            parts.push(self.delta.to_string());
        }
        match self.x {
            0 => {}
            1 => parts.push("X".into()),
            b => parts.push(format!("X^{b}")),
        }
        match self.y {
            0 => {}
            1 => parts.push("Y".into()),
            c => parts.push(format!("Y^{c}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn delta_monos_of_weight(w: u32, max_index: u32) -> Vec<DeltaMono> {
    // partitions of w into parts ≤ max_index
    if w == 0 {
        return vec![DeltaMono::one()];
    }
    let mut out = Vec::new();
    for part in (1..=max_index.min(w)).rev() {
        for rest in delta_monos_of_weight(w - part, part) {
            out.push(rest.mul(&DeltaMono::generator(part)));
        }
    }
    out
}

impl DeltaMono {
    /// All δ-monomials of weight exactly `w` (partitions of `w`).
    pub fn all_of_weight(w: u32) -> Vec<DeltaMono> {
        let mut v = delta_monos_of_weight(w, w);
        v.sort();
        v
    }
}

/// Every PBW monomial with `Σ j·a_j + b + c ≤ max_degree`.
pub fn monomials_up_to_degree(max_degree: u32) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    for dw in 0..=max_degree {
        for d in DeltaMono::all_of_weight(dw) {
            for b in 0..=(max_degree - dw) {
                for c in 0..=(max_degree - dw - b) {
                    out.push(PbwMonomial::new(d.clone(), b, c));
                }
            }
        }
    }
    out.sort();
    out
}
