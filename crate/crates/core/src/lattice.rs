//! Integer and rational linear algebra on small lattices.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn to_rat(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[i64], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + *y * *x)
}

pub fn fmt_rat(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_rat_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_int_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend_from_slice(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c[i]);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn apply_q(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rows).map(|i| dot_q(self.row(i), v)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    /// Smallest k ≥ 1 with self^k = 1, or None if not reached by `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    pub fn pow(&self, e: usize) -> IntMatrix {
        let mut r = Self::identity(self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Inverse of a matrix of finite order (used for lattice automorphisms).
    pub fn finite_order_inverse(&self, cap: usize) -> Option<IntMatrix> {
        let k = self.order(cap)?;
        Some(self.pow(k - 1))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: i64) {
        for j in 0..self.cols {
            let v = self.get(b, j);
            self.data[a * self.cols + j] += k * v;
        }
    }

    fn add_col(&mut self, a: usize, b: usize, k: i64) {
        for i in 0..self.rows {
            let v = self.get(i, b);
            self.data[i * self.cols + a] += k * v;
        }
    }

    fn neg_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self.data[a * self.cols + j] = -self.data[a * self.cols + j];
        }
    }
}

/// Smith form `u * a * v = diag(d)` with `u` unimodular; `v` is not tracked.
pub struct Smith {
    pub u: IntMatrix,
    pub diag: Vec<i64>,
    pub rank: usize,
}

pub fn smith(a: &IntMatrix) -> Smith {
    let mut m = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut t = 0;
    let (rows, cols) = (a.rows, a.cols);
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = m.get(i, j).abs();
                if x != 0 && best.is_none_or(|(bi, bj)| x < m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        u.swap_rows(t, pi);
        m.swap_cols(t, pj);
        loop {
            let p = m.get(t, t);
            let mut done = true;
            for i in t + 1..rows {
                let x = m.get(i, t);
                if x != 0 {
                    let k = Integer::div_floor(&x, &p);
                    m.add_row(i, t, -k);
                    u.add_row(i, t, -k);
                    if m.get(i, t) != 0 {
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                let x = m.get(t, j);
                if x != 0 {
                    let k = Integer::div_floor(&x, &p);
                    m.add_col(j, t, -k);
                    if m.get(t, j) != 0 {
                        done = false;
                    }
                }
            }
            if done {
                // Divisibility of the remaining block by the pivot.
                let mut fix = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if m.get(i, j) % p != 0 {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    None => break,
                    Some(i) => {
                        m.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                    }
                }
            }
            // Move the smallest entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                let x = m.get(i, t).abs();
                if x != 0 && x < m.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                let x = m.get(t, j).abs();
                if x != 0 && x < m.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            }
            if best.1 != t {
                m.swap_cols(t, best.1);
            }
        }
        if m.get(t, t) < 0 {
            m.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    let diag = (0..t).map(|i| m.get(i, i)).collect();
    Smith { u, diag, rank: t }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return vec![];
    }
    let mut m = IntMatrix::from_rows(rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            let mut piv: Option<usize> = None;
            for i in r..m.rows {
                let x = m.get(i, c).abs();
                if x != 0 && piv.is_none_or(|p| x < m.get(p, c).abs()) {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            m.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m.rows {
                let x = m.get(i, c);
                if x != 0 {
                    let k = Integer::div_floor(&x, &m.get(r, c));
                    m.add_row(i, r, -k);
                    if m.get(i, c) != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                if m.get(r, c) < 0 {
                    m.neg_row(r);
                }
                let p = m.get(r, c);
                for i in 0..r {
                    let k = Integer::div_floor(&m.get(i, c), &p);
                    m.add_row(i, r, -k);
                }
                r += 1;
                break;
            }
        }
    }
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Solve `a x = b` over ℚ; returns None when inconsistent. Free variables are set to zero.
pub fn solve_rational(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, &x)| {
            let mut r = r.clone();
            r.push(x);
            r
        })
        .collect();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let k = m[i][c];
                for j in 0..=cols {
                    let v = m[r][j];
                    m[i][j] -= k * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

pub fn rat_is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

pub fn rat_one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IntMatrix) {
        let s = smith(a);
        let ua = s.u.mul(a);
        // The first `rank` rows of u·a generate the same row lattice as diag; the rest vanish.
        for i in s.rank..a.rows {
            assert!(
                ua.row(i).iter().all(|&x| x == 0),
                "row {i} of u·a should vanish"
            );
        }
        for w in s.diag.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        // u is unimodular: its determinant is ±1, checked via Smith of u itself.
        let su = smith(&s.u);
        assert!(su.diag.iter().all(|&d| d == 1));
    }

    #[test]
    fn smith_of_known_matrices() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diag, vec![2, 6, 12]);
        check_smith(&a);
        let b = IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]);
        assert_eq!(smith(&b).diag, vec![1]);
        check_smith(&b);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(&[vec![2, 2], vec![-1, -1]]);
        assert_eq!(a, vec![vec![1, 1]]);
        let b = hermite_rows(&[vec![3, 1], vec![1, 0]]);
        assert_eq!(b, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn rational_solve() {
        let a = vec![vec![q(1), q(0)], vec![q(-1), q(1)], vec![q(0), q(-1)]];
        let x = solve_rational(&a, &[q(1), q(0), q(-1)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(solve_rational(&a, &[q(1), q(1), q(1)]).is_none());
    }

    proptest::proptest! {
        #[test]
        fn smith_random(entries in proptest::collection::vec(-6i64..6, 12)) {
            let a = IntMatrix { rows: 3, cols: 4, data: entries };
            check_smith(&a);
        }
    }
}
