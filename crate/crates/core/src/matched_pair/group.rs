use super::MatchedPairError;

/// A finite group given by its multiplication table; `table[g][h] = gh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, MatchedPairError> {
        let n = table.len();
        let bad = |m: &str| Err(MatchedPairError::InvalidGroup(m.to_string()));
        if n == 0 || names.len() != n {
            return bad("empty table or wrong number of names");
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table must be square with entries in range");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
            return bad("no identity element");
        };
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverse.push(h),
                None => return Err(MatchedPairError::InvalidGroup(format!("element {g} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(MatchedPairError::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inverse, identity, names })
    }

    /// Rows of space-separated indices, one row per element; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, MatchedPairError> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            rows.push(row.map_err(|e| MatchedPairError::Parse(format!("{e} in `{line}`")))?);
        }
        let names = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::from_table(rows, names)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(table, (0..n).map(|i| i.to_string()).collect()).expect("cyclic group")
    }

    /// Permutations of {1,2,3}, composed right to left: `(στ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let names = ["()", "(23)", "(12)", "(123)", "(132)", "(13)"];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        Self::from_table(table, names.iter().map(|s| s.to_string()).collect()).expect("S3")
    }

    /// `C₇ ⋊ C₃` on pairs `(x, y)`: `(x₁,y₁)(x₂,y₂) = (x₁ + 2^{y₁} x₂ mod 7, y₁ + y₂ mod 3)`.
    pub fn frobenius21() -> Self {
        let idx = |x: usize, y: usize| y * 7 + x;
        let pow2 = [1, 2, 4];
        let mut table = vec![vec![0; 21]; 21];
        for y1 in 0..3 {
            for x1 in 0..7 {
                for y2 in 0..3 {
                    for x2 in 0..7 {
                        table[idx(x1, y1)][idx(x2, y2)] = idx((x1 + pow2[y1] * x2) % 7, (y1 + y2) % 3);
                    }
                }
            }
        }
        let names = (0..21).map(|i| format!("({},{})", i % 7, i / 7)).collect();
        Self::from_table(table, names).expect("Frobenius group of order 21")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        members.contains(&self.identity)
            && members.iter().all(|&a| members.contains(&self.inv(a)) && members.iter().all(|&b| members.contains(&self.mul(a, b))))
    }
}

/// An exact factorization `G = G₁G₂`, `G₁ ∩ G₂ = {1}`. Elements of `G₁` and `G₂` are
/// addressed by their position in `g1()` and `g2()`; position 0 is the identity.
#[derive(Clone, Debug)]
pub struct Factorization {
    group: FiniteGroup,
    label: String,
    g1: Vec<usize>,
    g2: Vec<usize>,
    /// `g ↦ (k, a)` with `g = k a`.
    decomp: Vec<(usize, usize)>,
    /// `left[a][k] = a(k)`.
    left: Vec<Vec<usize>>,
    /// `right[a][k] = a·k`.
    right: Vec<Vec<usize>>,
}

impl Factorization {
    pub fn new(group: FiniteGroup, g1: Vec<usize>, g2: Vec<usize>, label: &str) -> Result<Self, MatchedPairError> {
        if !group.is_subgroup(&g1) {
            return Err(MatchedPairError::NotSubgroup("G₁"));
        }
        if !group.is_subgroup(&g2) {
            return Err(MatchedPairError::NotSubgroup("G₂"));
        }
        let e = group.identity();
        let order_first = |mut v: Vec<usize>| {
            v.sort();
            v.dedup();
            v.retain(|&x| x != e);
            v.insert(0, e);
            v
        };
        let (g1, g2) = (order_first(g1), order_first(g2));
        let mut decomp = vec![None; group.order()];
        for (ki, &k) in g1.iter().enumerate() {
            for (ai, &a) in g2.iter().enumerate() {
                let g = group.mul(k, a);
                if decomp[g].is_some() {
                    return Err(MatchedPairError::NotExact);
                }
                decomp[g] = Some((ki, ai));
            }
        }
        let decomp: Vec<(usize, usize)> = decomp.into_iter().collect::<Option<_>>().ok_or(MatchedPairError::NotExact)?;
        let mut left = vec![vec![0; g1.len()]; g2.len()];
        let mut right = vec![vec![0; g1.len()]; g2.len()];
        for (ai, &a) in g2.iter().enumerate() {
            for (ki, &k) in g1.iter().enumerate() {
                let (k2, a2) = decomp[group.mul(a, k)];
                left[ai][ki] = k2;
                right[ai][ki] = a2;
            }
        }
        Ok(Factorization { group, label: label.to_string(), g1, g2, decomp, left, right })
    }

    /// `G₁ = G`, `G₂ = {1}`: H(G) is the group algebra of G.
    pub fn group_only(group: FiniteGroup, label: &str) -> Self {
        let all = (0..group.order()).collect();
        let e = vec![group.identity()];
        Self::new(group, all, e, label).expect("trivial factorization")
    }

    /// `G₁ = {1}`, `G₂ = G`: H(G) is the algebra of functions on G.
    pub fn functions_only(group: FiniteGroup, label: &str) -> Self {
        let all = (0..group.order()).collect();
        let e = vec![group.identity()];
        Self::new(group, e, all, label).expect("trivial factorization")
    }

    /// Built-in factorizations: `s3`, `s3-swap`, `c6`, `f21`, `c<n>-group`, `c<n>-functions`,
    /// `s3-group`, `s3-functions`.
    pub fn builtin(name: &str) -> Result<Self, MatchedPairError> {
        let s3 = FiniteGroup::symmetric3;
        let named = |g: &FiniteGroup, xs: &[&str]| xs.iter().map(|x| g.find(x).unwrap()).collect::<Vec<_>>();
        match name {
            "s3" | "s3-swap" => {
                let g = s3();
                let rot = named(&g, &["()", "(123)", "(132)"]);
                let swap = named(&g, &["()", "(12)"]);
                if name == "s3" {
                    Self::new(g, rot, swap, name)
                } else {
                    Self::new(g, swap, rot, name)
                }
            }
            "s3-group" => Ok(Self::group_only(s3(), name)),
            "s3-functions" => Ok(Self::functions_only(s3(), name)),
            "c6" => Self::new(FiniteGroup::cyclic(6), vec![0, 2, 4], vec![0, 3], name),
            "f21" => Self::new(FiniteGroup::frobenius21(), (0..7).collect(), vec![0, 7, 14], name),
            _ => {
                let parse = |suffix: &str| {
                    name.strip_prefix('c')
                        .and_then(|r| r.strip_suffix(suffix))
                        .and_then(|n| n.parse::<usize>().ok())
                        .filter(|&n| n >= 1)
                };
                if let Some(n) = parse("-group") {
                    Ok(Self::group_only(FiniteGroup::cyclic(n), name))
                } else if let Some(n) = parse("-functions") {
                    Ok(Self::functions_only(FiniteGroup::cyclic(n), name))
                } else {
                    Err(MatchedPairError::UnknownBuiltin(name.to_string()))
                }
            }
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn g1(&self) -> &[usize] {
        &self.g1
    }

    pub fn g2(&self) -> &[usize] {
        &self.g2
    }

    pub fn n1(&self) -> usize {
        self.g1.len()
    }

    pub fn n2(&self) -> usize {
        self.g2.len()
    }

    /// `g = k a` with `k`, `a` as positions in `g1()`, `g2()`.
    pub fn decompose(&self, g: usize) -> (usize, usize) {
        self.decomp[g]
    }

    /// `a(k) = π₁(a k)`.
    pub fn act_left(&self, a: usize, k: usize) -> usize {
        self.left[a][k]
    }

    /// `a·k = π₂(a k)`.
    pub fn act_right(&self, a: usize, k: usize) -> usize {
        self.right[a][k]
    }

    pub fn mul1(&self, k: usize, l: usize) -> usize {
        self.decomp[self.group.mul(self.g1[k], self.g1[l])].0
    }

    pub fn mul2(&self, a: usize, b: usize) -> usize {
        self.decomp[self.group.mul(self.g2[a], self.g2[b])].1
    }

    pub fn inv1(&self, k: usize) -> usize {
        self.decomp[self.group.inv(self.g1[k])].0
    }

    pub fn inv2(&self, a: usize) -> usize {
        self.decomp[self.group.inv(self.g2[a])].1
    }

    pub fn name1(&self, k: usize) -> &str {
        self.group.name(self.g1[k])
    }

    pub fn name2(&self, a: usize) -> &str {
        self.group.name(self.g2[a])
    }
}
