use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        QMatrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hconcat(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        QMatrix::from_rows(rows, self.cols + other.cols)
    }

    pub fn rank(&self) -> usize {
        echelon(self).pivots.len()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hconcat(&QMatrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect(), 1));
        let ech = echelon(&aug);
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let rref = reduce(&ech, aug.cols);
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = rref[r][self.cols].clone();
        }
        Some(x)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

struct Echelon {
    /// Integer rows in echelon form (only the first `pivots.len()` are nonzero).
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination. Every division is exact.
fn echelon(m: &QMatrix) -> Echelon {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                for j in c + 1..cols {
                    if !a[i][j].is_zero() {
                        a[i][j] = &a[i][j] * &a[r][c] / &prev;
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots }
}

/// Reduced row echelon form of the pivot rows, over the rationals.
fn reduce(ech: &Echelon, cols: usize) -> Vec<Vec<Rational>> {
    let rank = ech.pivots.len();
    let mut rr: Vec<Vec<Rational>> = ech.rows[..rank]
        .iter()
        .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    for r in (0..rank).rev() {
        let pc = ech.pivots[r];
        let inv = rr[r][pc].recip();
        for j in pc..cols {
            if !rr[r][j].is_zero() {
                rr[r][j] *= &inv;
            }
        }
        for i in 0..r {
            let f = rr[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                if !rr[r][j].is_zero() {
                    let d = &f * &rr[r][j];
                    rr[i][j] -= d;
                }
            }
        }
    }
    rr
}

/// Rank over the rationals and a basis of the right kernel `{v : m v = 0}`.
///
/// Kernel vectors are scaled to primitive integer vectors.
pub fn mat_rank_kernel(m: &QMatrix) -> (usize, Vec<Vec<Rational>>) {
    let ech = echelon(m);
    let rank = ech.pivots.len();
    let rref = reduce(&ech, m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (r, &pc) in ech.pivots.iter().enumerate() {
            v[pc] = -rref[r][free].clone();
        }
        kernel.push(primitive(v));
    }
    (rank, kernel)
}

fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}
