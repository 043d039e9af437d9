//! Truncated power series `F_{q^m}[t]/(t^N)` and square matrices over them.

use crate::error::{Error, Result};
use crate::field::GaloisField;
use rand::Rng;
use std::sync::Arc;

/// A truncated power series: coefficient `i` is the coefficient of `t^i`.
pub type Series = Vec<u32>;

#[derive(Clone, Debug)]
pub struct TruncRing {
    pub field: Arc<GaloisField>,
    /// Frobenius `σ` raises coefficients to the power `p^e` (so `q = p^e`).
    pub e: u32,
    /// `N`: everything is computed modulo `t^N`.
    pub prec: usize,
}

impl TruncRing {
    /// `F_{q^m}[t]/(t^prec)` with `q = p^e`.
    pub fn new(p: u32, e: u32, m: u32, prec: usize) -> Result<TruncRing> {
        if prec == 0 {
            return Err(Error::InvalidSpec("precision must be positive".into()));
        }
        let field = GaloisField::get(p, e * m)?;
        Ok(TruncRing { field, e, prec })
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    pub fn q(&self) -> u32 {
        self.p().pow(self.e)
    }

    /// Degree of the coefficient field over `F_q`.
    pub fn m(&self) -> u32 {
        self.field.k / self.e
    }

    pub fn with_degree(&self, m: u32) -> Result<TruncRing> {
        TruncRing::new(self.p(), self.e, m, self.prec)
    }

    pub fn with_prec(&self, prec: usize) -> Result<TruncRing> {
        TruncRing::new(self.p(), self.e, self.m(), prec)
    }

    pub fn zero(&self) -> Series {
        vec![0; self.prec]
    }

    pub fn one(&self) -> Series {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> Series {
        let mut s = self.zero();
        s[0] = c;
        s
    }

    /// `c t^k`, which is zero once `k ≥ N`.
    pub fn monomial(&self, c: u32, k: usize) -> Series {
        let mut s = self.zero();
        if k < self.prec {
            s[k] = c;
        }
        s
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Index of the first nonzero coefficient, or `N` for zero.
    pub fn val(&self, a: &[u32]) -> usize {
        a.iter().position(|&c| c != 0).unwrap_or(self.prec)
    }

    pub fn is_unit(&self, a: &[u32]) -> bool {
        a[0] != 0
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Series {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Series {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.sub(x, y))
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> Series {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Series {
        let f = &self.field;
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().take(self.prec - i).enumerate() {
                if y != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(x, y));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Series {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn inv(&self, a: &[u32]) -> Option<Series> {
        let f = &self.field;
        let c0 = f.inv(a[0])?;
        let mut out = self.zero();
        out[0] = c0;
        for k in 1..self.prec {
            let mut acc = 0;
            for i in 1..=k {
                acc = f.add(acc, f.mul(a[i], out[k - i]));
            }
            out[k] = f.neg(f.mul(acc, c0));
        }
        Some(out)
    }

    /// Divides by `t^k`; the top `k` coefficients become unknown and are set to zero.
    pub fn shift_down(&self, a: &[u32], k: usize) -> Series {
        let mut out = self.zero();
        for i in k..self.prec {
            out[i - k] = a[i];
        }
        out
    }

    pub fn shift_up(&self, a: &[u32], k: usize) -> Series {
        let mut out = self.zero();
        for i in 0..self.prec.saturating_sub(k) {
            out[i + k] = a[i];
        }
        out
    }

    pub fn sigma(&self, a: &[u32]) -> Series {
        a.iter().map(|&x| self.field.frob(x, self.e)).collect()
    }

    pub fn sigma_inv(&self, a: &[u32]) -> Series {
        let k = self.field.k;
        let e = (k - self.e % k) % k;
        a.iter().map(|&x| self.field.frob(x, e)).collect()
    }

    /// Moves a series from `src` into this ring (larger or equal field, any precision).
    pub fn embed(&self, src: &TruncRing, a: &[u32]) -> Result<Series> {
        let mut out = self.zero();
        for (i, &c) in a.iter().enumerate().take(self.prec) {
            out[i] = self.field.embed(&src.field, c)?;
        }
        Ok(out)
    }

    pub fn random(&self, rng: &mut impl Rng) -> Series {
        (0..self.prec)
            .map(|_| rng.gen_range(0..self.field.size))
            .collect()
    }

    pub fn random_unit(&self, rng: &mut impl Rng) -> Series {
        let mut s = self.random(rng);
        s[0] = rng.gen_range(1..self.field.size);
        s
    }

    /// Random element of the subfield `F_q` (coefficients of samples drawn over the base field).
    pub fn random_base_scalar(&self, rng: &mut impl Rng) -> Result<u32> {
        let base = GaloisField::get(self.p(), self.e)?;
        self.field.embed(&base, rng.gen_range(0..base.size))
    }

    pub fn random_base_series(&self, rng: &mut impl Rng) -> Result<Series> {
        (0..self.prec)
            .map(|_| self.random_base_scalar(rng))
            .collect()
    }
}

/// `n × n` matrix over a [`TruncRing`], row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopMatrix {
    pub n: usize,
    pub entries: Vec<Series>,
}

impl LoopMatrix {
    pub fn zeros(r: &TruncRing, n: usize) -> LoopMatrix {
        LoopMatrix {
            n,
            entries: vec![r.zero(); n * n],
        }
    }

    pub fn identity(r: &TruncRing, n: usize) -> LoopMatrix {
        let mut m = Self::zeros(r, n);
        for i in 0..n {
            m.entries[i * n + i] = r.one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Series) {
        self.entries[i * self.n + j] = v;
    }

    /// Coefficient matrices, `level(k)[i][j]` = coefficient of `t^k` in entry `(i, j)`.
    pub fn level(&self, k: usize) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)[k]).collect())
            .collect()
    }

    /// Nested coefficient lists, handy for serialization.
    pub fn to_nested(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

/// Matrix operations and group memberships.
impl TruncRing {
    /// `diag(t^λ) · P_w` where `P_w e_i = e_{w(i)}`; `perm[i] = w(i)`.
    pub fn monomial_matrix(&self, lambda: &[i64], perm: &[usize]) -> Result<LoopMatrix> {
        let n = lambda.len();
        if perm.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: perm.len(),
            });
        }
        let mut m = LoopMatrix::zeros(self, n);
        for (i, &wi) in perm.iter().enumerate() {
            let e = lambda[wi];
            if e < 0 {
                return Err(Error::Precondition(
                    "negative exponents do not fit in a power series ring".into(),
                ));
            }
            m.set(wi, i, self.monomial(1, e as usize));
        }
        Ok(m)
    }

    pub fn diagonal(&self, d: &[Series]) -> LoopMatrix {
        let n = d.len();
        let mut m = LoopMatrix::zeros(self, n);
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// `1 + x E_{ij}` for `i ≠ j`.
    pub fn root_element(&self, n: usize, i: usize, j: usize, x: Series) -> Result<LoopMatrix> {
        if i == j || i >= n || j >= n {
            return Err(Error::Precondition(format!(
                "({i}, {j}) is not an off-diagonal position"
            )));
        }
        let mut m = LoopMatrix::identity(self, n);
        m.set(i, j, x);
        Ok(m)
    }

    pub fn mat_mul(&self, a: &LoopMatrix, b: &LoopMatrix) -> LoopMatrix {
        let n = a.n;
        let mut out = LoopMatrix::zeros(self, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.zero();
                for k in 0..n {
                    let (x, y) = (a.get(i, k), b.get(k, j));
                    if !self.is_zero(x) && !self.is_zero(y) {
                        acc = self.add(&acc, &self.mul(x, y));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mat_add(&self, a: &LoopMatrix, b: &LoopMatrix) -> LoopMatrix {
        LoopMatrix {
            n: a.n,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| self.add(x, y))
                .collect(),
        }
    }

    pub fn mat_sub(&self, a: &LoopMatrix, b: &LoopMatrix) -> LoopMatrix {
        LoopMatrix {
            n: a.n,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| self.sub(x, y))
                .collect(),
        }
    }

    pub fn mat_sigma(&self, a: &LoopMatrix) -> LoopMatrix {
        LoopMatrix {
            n: a.n,
            entries: a.entries.iter().map(|x| self.sigma(x)).collect(),
        }
    }

    pub fn mat_embed(&self, src: &TruncRing, a: &LoopMatrix) -> Result<LoopMatrix> {
        Ok(LoopMatrix {
            n: a.n,
            entries: a
                .entries
                .iter()
                .map(|x| self.embed(src, x))
                .collect::<Result<_>>()?,
        })
    }

    pub fn is_identity(&self, a: &LoopMatrix) -> bool {
        *a == LoopMatrix::identity(self, a.n)
    }

    /// Inverse in `GL_n(F[t]/t^N)`; `None` when the reduction mod `t` is singular.
    pub fn mat_inv(&self, a: &LoopMatrix) -> Option<LoopMatrix> {
        let n = a.n;
        let mut m = a.clone();
        let mut inv = LoopMatrix::identity(self, n);
        for c in 0..n {
            let piv = (c..n).find(|&r| self.is_unit(m.get(r, c)))?;
            if piv != c {
                for j in 0..n {
                    m.entries.swap(piv * n + j, c * n + j);
                    inv.entries.swap(piv * n + j, c * n + j);
                }
            }
            let pinv = self.inv(m.get(c, c))?;
            for j in 0..n {
                m.set(c, j, self.mul(&pinv, m.get(c, j)));
                inv.set(c, j, self.mul(&pinv, inv.get(c, j)));
            }
            for r in 0..n {
                if r == c || self.is_zero(m.get(r, c)) {
                    continue;
                }
                let f = m.get(r, c).clone();
                for j in 0..n {
                    let v = self.sub(m.get(r, j), &self.mul(&f, m.get(c, j)));
                    m.set(r, j, v);
                    let v = self.sub(inv.get(r, j), &self.mul(&f, inv.get(c, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self, a: &LoopMatrix) -> Series {
        let idx: Vec<usize> = (0..a.n).collect();
        self.minor_det(a, &idx, 0)
    }

    fn minor_det(&self, a: &LoopMatrix, cols: &[usize], row: usize) -> Series {
        if cols.is_empty() {
            return self.one();
        }
        let mut acc = self.zero();
        for (k, &c) in cols.iter().enumerate() {
            let x = a.get(row, c);
            if self.is_zero(x) {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
            let term = self.mul(x, &self.minor_det(a, &rest, row + 1));
            acc = if k % 2 == 0 {
                self.add(&acc, &term)
            } else {
                self.sub(&acc, &term)
            };
        }
        acc
    }

    /// `h g σ(h)^{-1}`.
    pub fn sigma_conjugate(&self, h: &LoopMatrix, g: &LoopMatrix) -> Result<LoopMatrix> {
        let s = self
            .mat_inv(&self.mat_sigma(h))
            .ok_or_else(|| Error::Precondition("conjugator is not in K".into()))?;
        Ok(self.mat_mul(&self.mat_mul(h, g), &s))
    }

    /// `g ∈ K = GL_n(O)`.
    pub fn in_k(&self, g: &LoopMatrix) -> bool {
        self.is_unit(&self.det(g))
    }

    /// `g ≡ 1 mod t`.
    pub fn in_k1(&self, g: &LoopMatrix) -> bool {
        let n = g.n;
        (0..n).all(|i| (0..n).all(|j| g.get(i, j)[0] == u32::from(i == j)))
    }

    /// Standard Iwahori: upper triangular and invertible mod `t`.
    pub fn in_iwahori(&self, g: &LoopMatrix) -> bool {
        let n = g.n;
        (0..n).all(|i| g.get(i, i)[0] != 0 && (0..i).all(|j| g.get(i, j)[0] == 0))
    }

    /// `g ∈ K` with `val g_{ij} ≥ max(0, χ_j − χ_i)`.
    pub fn in_k_chi(&self, g: &LoopMatrix, chi: &[i64]) -> bool {
        let n = g.n;
        self.in_k(g)
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let need = (chi[j] - chi[i]).max(0) as usize;
                    self.val(g.get(i, j)) >= need.min(self.prec)
                })
            })
    }

    pub fn random_matrix(&self, n: usize, rng: &mut impl Rng) -> LoopMatrix {
        LoopMatrix {
            n,
            entries: (0..n * n).map(|_| self.random(rng)).collect(),
        }
    }

    /// Uniform element of `K` over the full coefficient field.
    pub fn random_k(&self, n: usize, rng: &mut impl Rng) -> LoopMatrix {
        loop {
            let g = self.random_matrix(n, rng);
            if self.in_k(&g) {
                return g;
            }
        }
    }

    /// Uniform element of `K_1` with coefficients in `F_q`.
    pub fn random_base_k1(&self, n: usize, rng: &mut impl Rng) -> Result<LoopMatrix> {
        let mut g = LoopMatrix::identity(self, n);
        for e in g.entries.iter_mut() {
            for c in e.iter_mut().skip(1) {
                *c = self.random_base_scalar(rng)?;
            }
        }
        Ok(g)
    }

    /// Uniform element of the Iwahori with coefficients in `F_q`.
    pub fn random_base_iwahori(&self, n: usize, rng: &mut impl Rng) -> Result<LoopMatrix> {
        let mut g = LoopMatrix::zeros(self, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = self.random_base_series(rng)?;
                if i > j {
                    s[0] = 0;
                }
                if i == j {
                    while s[0] == 0 {
                        s[0] = self.random_base_scalar(rng)?;
                    }
                }
                g.set(i, j, s);
            }
        }
        Ok(g)
    }

    /// Elementary divisors `t^{a_1}, …, t^{a_n}` with `a_1 ≥ … ≥ a_n`.
    ///
    /// Fails with insufficient precision when some divisor is not visible mod `t^N`.
    pub fn cartan_invariant(&self, g: &LoopMatrix) -> Result<Vec<i64>> {
        let n = g.n;
        let mut m = g.clone();
        let mut out = vec![];
        for step in 0..n {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in step..n {
                for j in step..n {
                    let v = self.val(m.get(i, j));
                    if v < self.prec && best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((v, pi, pj)) = best else {
                return Err(Error::InsufficientPrecision(format!(
                    "{} of {n} elementary divisors vanish mod t^{}",
                    n - step,
                    self.prec
                )));
            };
            // Move the pivot to (step, step).
            for j in 0..n {
                m.entries.swap(pi * n + j, step * n + j);
            }
            for i in 0..n {
                m.entries.swap(i * n + pj, i * n + step);
            }
            let unit_inv = self
                .inv(&self.shift_down(m.get(step, step), v))
                .expect("pivot unit");
            for i in step + 1..n {
                let f = self.mul(&self.shift_down(m.get(i, step), v), &unit_inv);
                for j in step..n {
                    let x = self.sub(m.get(i, j), &self.mul(&f, m.get(step, j)));
                    m.set(i, j, x);
                }
            }
            for j in step + 1..n {
                let f = self.mul(&self.shift_down(m.get(step, j), v), &unit_inv);
                for i in step..n {
                    let x = self.sub(m.get(i, j), &self.mul(&f, m.get(i, step)));
                    m.set(i, j, x);
                }
            }
            out.push(v as i64);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    /// `g σ(g) ⋯ σ^{s-1}(g)`.
    pub fn sigma_power(&self, g: &LoopMatrix, steps: usize) -> LoopMatrix {
        let mut acc = LoopMatrix::identity(self, g.n);
        let mut cur = g.clone();
        for _ in 0..steps {
            acc = self.mat_mul(&acc, &cur);
            cur = self.mat_sigma(&cur);
        }
        acc
    }

    /// Cartan invariant of `g σ(g) ⋯ σ^{s-1}(g)` divided by `s`.
    pub fn newton_invariant(&self, g: &LoopMatrix, steps: usize) -> Result<Vec<crate::lattice::Q>> {
        if steps == 0 {
            return Err(Error::Precondition(
                "at least one Frobenius step is needed".into(),
            ));
        }
        let c = self.cartan_invariant(&self.sigma_power(g, steps))?;
        Ok(c.into_iter()
            .map(|x| crate::lattice::Q::new(x, steps as i64))
            .collect())
    }
}
