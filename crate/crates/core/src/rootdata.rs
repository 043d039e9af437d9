//! Root data of split classical groups in concrete integer coordinates.
//!
//! Coordinates:
//! - `GL_n`: cocharacters are `Z^n`, roots `e_i - e_j`.
//! - `SL_n`: cocharacters are written in the basis of simple coroots
//!   `e_i - e_{i+1}`; characters in the dual basis (fundamental weights).
//! - `Sp_2n`: cocharacters `Z^n`, roots `±e_i ± e_j` and `±2e_i` (type C).
//! - `GSp_2n`: cocharacters `(a_1..a_n; c)` in `Z^{n+1}` where the torus is
//!   `diag(t^a_1, .., t^a_n, t^{c-a_n}, .., t^{c-a_1})`.
//!
//! For `Sp` and `GSp` the `rank` field of [`GroupSpec`] is the matrix size `2n`.

use crate::error::{Error, Result};
use crate::lattice::{dot, dot_q, solve_rational, to_rat, IntMatrix, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

pub type Cochar = Vec<i64>;
pub type RatCochar = Vec<Q>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    Sp,
    GSp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::Sp => "Sp",
            Family::GSp => "GSp",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::GL),
            "sl" => Ok(Family::SL),
            "sp" => Ok(Family::Sp),
            "gsp" => Ok(Family::GSp),
            other => Err(format!(
                "unknown family '{other}' (expected GL, SL, Sp or GSp)"
            )),
        }
    }
}

/// Frobenius action on the based root datum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SigmaSpec {
    Identity,
    /// Images of the simple roots, 0-based: simple root `i` goes to `perm[i]`.
    Perm(Vec<usize>),
    /// `v -> -w0(v)`, the opposition involution. Differs from the identity
    /// on `GL_n` even when the Dynkin diagram has a single node.
    Opposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub rank: usize,
    pub sigma: SigmaSpec,
}

impl GroupSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        GroupSpec {
            family,
            rank,
            sigma: SigmaSpec::Identity,
        }
    }

    pub fn with_sigma(mut self, sigma: SigmaSpec) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::GL if self.rank >= 1 => Ok(()),
            Family::SL if self.rank >= 2 => Ok(()),
            Family::Sp | Family::GSp if self.rank >= 2 && self.rank % 2 == 0 => Ok(()),
            Family::GL => Err(Error::InvalidSpec("GL rank must be at least 1".into())),
            Family::SL => Err(Error::InvalidSpec("SL rank must be at least 2".into())),
            _ => Err(Error::InvalidSpec(format!(
                "{} rank is the matrix size and must be even and at least 2, got {}",
                self.family, self.rank
            ))),
        }
    }

    pub fn name(&self) -> String {
        let base = format!("{}_{}", self.family, self.rank);
        match &self.sigma {
            SigmaSpec::Identity => base,
            SigmaSpec::Opposition => format!("{base} (sigma = opposition)"),
            SigmaSpec::Perm(p) => {
                let s: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
                format!("{base} (sigma = perm:{})", s.join(","))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub spec: GroupSpec,
    pub cochar_rank: usize,
    /// Roots in character coordinates; positive roots come first.
    pub roots: Vec<Vec<i64>>,
    /// Coroots in cocharacter coordinates, parallel to `roots`.
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
    pub positive_indices: Vec<usize>,
    pub is_positive: Vec<bool>,
    pub sigma_cochar: IntMatrix,
    pub sigma_cochar_inv: IntMatrix,
    pub sigma_order: usize,
    /// Permutation of simple-root positions induced by sigma.
    pub sigma_simple: Vec<usize>,
    /// Permutation of all root indices induced by sigma.
    pub sigma_roots: Vec<usize>,
    /// Columns are the simple coroots.
    pub coroot_lattice_basis: IntMatrix,
    /// Longest Weyl element as a matrix on cocharacters.
    pub w0_cochar: IntMatrix,
    root_lookup: HashMap<Vec<i64>, usize>,
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

fn raw_roots(family: Family, rank: usize) -> (usize, Vec<(Vec<i64>, Vec<i64>)>, Vec<usize>) {
    // Returns cocharacter rank, positive (root, coroot) pairs, positions of simple roots.
    let mut pos = vec![];
    let mut simple = vec![];
    match family {
        Family::GL => {
            let n = rank;
            for i in 0..n {
                for j in i + 1..n {
                    let mut r = vec![0; n];
                    r[i] = 1;
                    r[j] = -1;
                    if j == i + 1 {
                        simple.push(pos.len());
                    }
                    pos.push((r.clone(), r));
                }
            }
            (n, pos, simple)
        }
        Family::SL => {
            let n = rank;
            let d = n - 1;
            for a in 0..n {
                for b in a + 1..n {
                    let mut r = vec![0; d];
                    let mut c = vec![0; d];
                    for (i, ri) in r.iter_mut().enumerate() {
                        let e = |k: usize| i64::from(k == i) - i64::from(k == i + 1);
                        *ri = e(a) - e(b);
                    }
                    for ci in c.iter_mut().take(b).skip(a) {
                        *ci = 1;
                    }
                    if b == a + 1 {
                        simple.push(pos.len());
                    }
                    pos.push((r, c));
                }
            }
            (d, pos, simple)
        }
        Family::Sp | Family::GSp => {
            let n = rank / 2;
            let d = if family == Family::Sp { n } else { n + 1 };
            let sim = family == Family::GSp;
            for i in 0..n {
                for j in i + 1..n {
                    let mut r = vec![0; d];
                    r[i] = 1;
                    r[j] = -1;
                    if j == i + 1 {
                        simple.push(pos.len());
                    }
                    pos.push((r.clone(), r));
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let mut r = vec![0; d];
                    r[i] = 1;
                    r[j] = 1;
                    let c = r.clone();
                    if sim {
                        r[n] = -1;
                    }
                    pos.push((r, c));
                }
            }
            for i in 0..n {
                let mut r = vec![0; d];
                r[i] = 2;
                if sim {
                    r[n] = -1;
                }
                if i == n - 1 {
                    simple.push(pos.len());
                }
                pos.push((r, unit(d, i)));
            }
            (d, pos, simple)
        }
    }
}

impl RootDatum {
    pub fn build(spec: &GroupSpec) -> Result<RootDatum> {
        spec.validate()?;
        let (d, pos, simple) = raw_roots(spec.family, spec.rank);
        let p = pos.len();
        let mut roots = Vec::with_capacity(2 * p);
        let mut coroots = Vec::with_capacity(2 * p);
        for (r, c) in &pos {
            roots.push(r.clone());
            coroots.push(c.clone());
        }
        for (r, c) in &pos {
            roots.push(r.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let root_lookup = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let simple_coroots: Vec<Vec<i64>> = simple.iter().map(|&i| coroots[i].clone()).collect();
        let mut datum = RootDatum {
            spec: spec.clone(),
            cochar_rank: d,
            is_positive: (0..2 * p).map(|i| i < p).collect(),
            positive_indices: (0..p).collect(),
            simple_indices: simple,
            roots,
            coroots,
            sigma_cochar: IntMatrix::identity(d),
            sigma_cochar_inv: IntMatrix::identity(d),
            sigma_order: 1,
            sigma_simple: vec![],
            sigma_roots: (0..2 * p).collect(),
            coroot_lattice_basis: IntMatrix::from_cols(&simple_coroots, d),
            w0_cochar: IntMatrix::identity(d),
            root_lookup,
        };
        datum.sigma_simple = (0..datum.simple_indices.len()).collect();
        datum.w0_cochar = datum.compute_w0();
        datum.install_sigma()?;
        Ok(datum)
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_indices.len()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.root_lookup.get(r).copied()
    }

    /// Index of the root `-roots[i]`.
    pub fn negate_index(&self, i: usize) -> usize {
        let p = self.positive_indices.len();
        if i < p {
            i + p
        } else {
            i - p
        }
    }

    pub fn simple_root(&self, s: usize) -> &[i64] {
        &self.roots[self.simple_indices[s]]
    }

    pub fn simple_coroot(&self, s: usize) -> &[i64] {
        &self.coroots[self.simple_indices[s]]
    }

    /// Cartan matrix `a_ij = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.semisimple_rank();
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| dot(self.simple_root(j), self.simple_coroot(i)))
                    .collect()
            })
            .collect()
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.cochar_rank {
            return Err(Error::Dimension {
                expected: self.cochar_rank,
                got,
            });
        }
        Ok(())
    }

    pub fn pairing(&self, chi: &[i64], v: &[Q]) -> Result<Q> {
        self.check_dim(chi.len())?;
        self.check_dim(v.len())?;
        Ok(dot_q(chi, v))
    }

    pub fn pairing_int(&self, chi: &[i64], v: &[i64]) -> Result<i64> {
        self.check_dim(chi.len())?;
        self.check_dim(v.len())?;
        Ok(dot(chi, v))
    }

    pub fn is_dominant(&self, v: &[Q]) -> bool {
        self.simple_indices
            .iter()
            .all(|&i| !dot_q(&self.roots[i], v).is_negative())
    }

    pub fn is_dominant_int(&self, v: &[i64]) -> bool {
        self.simple_indices
            .iter()
            .all(|&i| dot(&self.roots[i], v) >= 0)
    }

    /// Pairs to zero with every root.
    pub fn is_central(&self, v: &[Q]) -> bool {
        self.positive_indices
            .iter()
            .all(|&i| dot_q(&self.roots[i], v).is_zero())
    }

    pub fn sigma_apply(&self, v: &[i64]) -> Cochar {
        self.sigma_cochar.apply(v)
    }

    pub fn sigma_apply_q(&self, v: &[Q]) -> RatCochar {
        self.sigma_cochar.apply_q(v)
    }

    pub fn sigma_inv_apply(&self, v: &[i64]) -> Cochar {
        self.sigma_cochar_inv.apply(v)
    }

    /// Matrix of `x -> x - <alpha, x> alpha^vee`.
    pub fn reflection_matrix(&self, root: usize) -> IntMatrix {
        let (a, c) = (&self.roots[root], &self.coroots[root]);
        let d = self.cochar_rank;
        let mut m = IntMatrix::identity(d);
        for r in 0..d {
            for k in 0..d {
                m.set(r, k, m.get(r, k) - c[r] * a[k]);
            }
        }
        m
    }

    pub fn reflect_q(&self, root: usize, v: &[Q]) -> RatCochar {
        let p = dot_q(&self.roots[root], v);
        v.iter()
            .zip(&self.coroots[root])
            .map(|(x, &c)| *x - p * c)
            .collect()
    }

    /// Dominant element of the Weyl orbit of `v`.
    pub fn dominant_vector(&self, v: &[Q]) -> RatCochar {
        let mut v = v.to_vec();
        loop {
            let Some(&i) = self
                .simple_indices
                .iter()
                .find(|&&i| dot_q(&self.roots[i], &v).is_negative())
            else {
                return v;
            };
            v = self.reflect_q(i, &v);
        }
    }

    /// Coefficients of a root in the basis of simple roots.
    pub fn simple_root_coefficients(&self, root: usize) -> Option<Vec<Q>> {
        let d = self.cochar_rank;
        let l = self.semisimple_rank();
        let a: Vec<Vec<Q>> = (0..d)
            .map(|r| {
                (0..l)
                    .map(|s| Q::from_integer(self.simple_root(s)[r]))
                    .collect()
            })
            .collect();
        solve_rational(&a, &to_rat(&self.roots[root]))
    }

    /// Coefficients of `v` in the basis of simple coroots, if `v` lies in their span.
    pub fn simple_coroot_coefficients(&self, v: &[Q]) -> Option<Vec<Q>> {
        let d = self.cochar_rank;
        let l = self.semisimple_rank();
        let a: Vec<Vec<Q>> = (0..d)
            .map(|r| {
                (0..l)
                    .map(|s| Q::from_integer(self.simple_coroot(s)[r]))
                    .collect()
            })
            .collect();
        solve_rational(&a, v)
    }

    fn compute_w0(&self) -> IntMatrix {
        let d = self.cochar_rank;
        let mut v = vec![0i64; d];
        for &i in &self.positive_indices {
            for (x, c) in v.iter_mut().zip(&self.coroots[i]) {
                *x += c;
            }
        }
        let mut w = IntMatrix::identity(d);
        while let Some(&i) = self
            .simple_indices
            .iter()
            .find(|&&i| dot(&self.roots[i], &v) > 0)
        {
            let s = self.reflection_matrix(i);
            v = s.apply(&v);
            w = s.mul(&w);
        }
        w
    }

    fn opposition_perm(&self) -> Vec<usize> {
        let m = self.w0_cochar.neg();
        (0..self.semisimple_rank())
            .map(|s| {
                let img = m.apply(self.simple_coroot(s));
                (0..self.semisimple_rank())
                    .find(|&t| self.simple_coroot(t) == img.as_slice())
                    .expect("-w0 permutes simple coroots")
            })
            .collect()
    }

    fn install_sigma(&mut self) -> Result<()> {
        let l = self.semisimple_rank();
        let d = self.cochar_rank;
        let m = match &self.spec.sigma {
            SigmaSpec::Identity => IntMatrix::identity(d),
            SigmaSpec::Opposition => self.w0_cochar.neg(),
            SigmaSpec::Perm(p) => {
                if p.len() != l {
                    return Err(Error::SigmaNotAutomorphism(format!(
                        "permutation has {} entries but there are {l} simple roots",
                        p.len()
                    )));
                }
                let mut seen = vec![false; l];
                for &x in p {
                    if x >= l || seen[x] {
                        return Err(Error::SigmaNotAutomorphism(format!(
                            "{:?} is not a permutation of 1..{l}",
                            one_based(p)
                        )));
                    }
                    seen[x] = true;
                }
                let c = self.cartan_matrix();
                for i in 0..l {
                    for j in 0..l {
                        if c[p[i]][p[j]] != c[i][j] {
                            return Err(Error::SigmaNotAutomorphism(format!(
                                "Cartan entry a[{},{}] = {} but a[{},{}] = {}",
                                i + 1,
                                j + 1,
                                c[i][j],
                                p[i] + 1,
                                p[j] + 1,
                                c[p[i]][p[j]]
                            )));
                        }
                    }
                }
                if p.iter().enumerate().all(|(i, &x)| i == x) {
                    IntMatrix::identity(d)
                } else if self.spec.family == Family::SL {
                    // Coordinates are the simple coroots, so sigma is the permutation itself.
                    let mut m = IntMatrix::zeros(d, d);
                    for (i, &x) in p.iter().enumerate() {
                        m.set(x, i, 1);
                    }
                    m
                } else if *p == self.opposition_perm() {
                    self.w0_cochar.neg()
                } else {
                    return Err(Error::SigmaNotAutomorphism(format!(
                        "permutation {:?} does not lift to an automorphism of the {} root datum",
                        one_based(p),
                        self.spec.family
                    )));
                }
            }
        };
        let order = m.order(64).ok_or_else(|| {
            Error::SigmaNotAutomorphism("sigma does not have finite order".into())
        })?;
        let inv = m.pow(order - 1);
        // sigma on characters is the inverse transpose.
        let char_m = inv.transpose();
        let mut root_perm = vec![0; self.num_roots()];
        for (i, r) in self.roots.iter().enumerate() {
            let img = char_m.apply(r);
            let j = self.root_index(&img).ok_or_else(|| {
                Error::SigmaNotAutomorphism(format!("root {:?} is not sent to a root", r))
            })?;
            if m.apply(&self.coroots[i]) != self.coroots[j] {
                return Err(Error::SigmaNotAutomorphism(format!(
                    "coroot of {:?} is not sent to the matching coroot",
                    r
                )));
            }
            if self.is_positive[i] != self.is_positive[j] {
                return Err(Error::SigmaNotAutomorphism(format!(
                    "positive root {:?} is not sent to a positive root",
                    r
                )));
            }
            root_perm[i] = j;
        }
        let simple_perm: Vec<usize> = (0..l)
            .map(|s| {
                let j = root_perm[self.simple_indices[s]];
                self.simple_indices.iter().position(|&x| x == j)
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::SigmaNotAutomorphism("sigma does not permute simple roots".into())
            })?;
        if let SigmaSpec::Perm(p) = &self.spec.sigma {
            if simple_perm != *p {
                return Err(Error::Consistency(
                    "lifted sigma disagrees with the requested permutation".into(),
                ));
            }
        }
        self.sigma_cochar = m;
        self.sigma_cochar_inv = inv;
        self.sigma_order = order;
        self.sigma_simple = simple_perm;
        self.sigma_roots = root_perm;
        Ok(())
    }

    pub fn sigma_is_identity(&self) -> bool {
        self.sigma_order == 1
    }

    /// Type-A groups: coordinates in `Q^n` (for `SL_n` the sum-zero hyperplane).
    pub fn type_a_ambient(&self, v: &[Q]) -> Option<Vec<Q>> {
        match self.spec.family {
            Family::GL => Some(v.to_vec()),
            Family::SL => {
                let n = self.spec.rank;
                Some(
                    (0..n)
                        .map(|k| {
                            let cur = if k < n - 1 { v[k] } else { Q::zero() };
                            let prev = if k > 0 { v[k - 1] } else { Q::zero() };
                            cur - prev
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Converts a cocharacter given in the usual matrix coordinates into datum
    /// coordinates. Only `SL_n` differs: there `Z^n` sum-zero vectors are
    /// rewritten in the simple-coroot basis.
    pub fn cochar_from_matrix_coords(&self, v: &[i64]) -> Result<Cochar> {
        match self.spec.family {
            Family::SL => {
                let n = self.spec.rank;
                if v.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        got: v.len(),
                    });
                }
                if v.iter().sum::<i64>() != 0 {
                    return Err(Error::InvalidSpec(format!(
                        "SL_{n} cocharacter must have coordinate sum 0"
                    )));
                }
                let mut acc = 0;
                Ok(v[..n - 1]
                    .iter()
                    .map(|x| {
                        acc += x;
                        acc
                    })
                    .collect())
            }
            _ => {
                self.check_dim(v.len())?;
                Ok(v.to_vec())
            }
        }
    }
}

fn one_based(p: &[usize]) -> Vec<usize> {
    p.iter().map(|x| x + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::q;
    use proptest::prelude::*;

    fn gl(n: usize) -> RootDatum {
        RootDatum::build(&GroupSpec::new(Family::GL, n)).unwrap()
    }

    fn all_data() -> Vec<RootDatum> {
        let mut v = vec![];
        for n in 1..=5 {
            v.push(gl(n));
            v.push(
                RootDatum::build(&GroupSpec::new(Family::GL, n).with_sigma(SigmaSpec::Opposition))
                    .unwrap(),
            );
        }
        for n in 2..=5 {
            v.push(RootDatum::build(&GroupSpec::new(Family::SL, n)).unwrap());
            v.push(
                RootDatum::build(&GroupSpec::new(Family::SL, n).with_sigma(SigmaSpec::Opposition))
                    .unwrap(),
            );
        }
        for n in [2, 4, 6, 8] {
            v.push(RootDatum::build(&GroupSpec::new(Family::Sp, n)).unwrap());
            v.push(RootDatum::build(&GroupSpec::new(Family::GSp, n)).unwrap());
        }
        v
    }

    #[test]
    fn gl2_and_gl3_shapes() {
        let g2 = gl(2);
        assert_eq!(g2.num_roots(), 2);
        assert_eq!(g2.semisimple_rank(), 1);
        assert_eq!(g2.simple_coroot(0), &[1, -1]);
        let g3 = gl(3);
        assert_eq!(g3.num_roots(), 6);
        assert_eq!(g3.positive_indices.len(), 3);
        assert_eq!(g3.semisimple_rank(), 2);
    }

    #[test]
    fn type_c_counts() {
        // Type C_n has 2n^2 roots.
        for n in 1..=4 {
            let d = RootDatum::build(&GroupSpec::new(Family::Sp, 2 * n)).unwrap();
            assert_eq!(d.num_roots(), 2 * n * n);
            let g = RootDatum::build(&GroupSpec::new(Family::GSp, 2 * n)).unwrap();
            assert_eq!(g.num_roots(), 2 * n * n);
            assert_eq!(g.cochar_rank, n + 1);
        }
    }

    #[test]
    fn twisted_gl3_sigma() {
        let spec = GroupSpec::new(Family::GL, 3).with_sigma(SigmaSpec::Perm(vec![1, 0]));
        let d = RootDatum::build(&spec).unwrap();
        assert_eq!(d.sigma_apply(&[1, 2, 3]), vec![-3, -2, -1]);
        assert_eq!(d.sigma_apply(&[1, 0, 0]), vec![0, 0, -1]);
        assert_eq!(d.sigma_order, 2);
        // Cartan matrix preserved under the swap.
        let c = d.cartan_matrix();
        assert_eq!(c[0][1], c[1][0]);
        for v in [[3i64, 1, 0], [2, 2, -1], [0, 0, 0]] {
            assert!(d.is_dominant_int(&d.sigma_apply(&v)));
        }
    }

    #[test]
    fn bad_sigma_is_rejected() {
        let spec = GroupSpec::new(Family::Sp, 4).with_sigma(SigmaSpec::Perm(vec![1, 0]));
        let err = RootDatum::build(&spec).unwrap_err();
        assert!(
            matches!(err, Error::SigmaNotAutomorphism(ref m) if m.contains("Cartan")),
            "{err}"
        );
        let spec = GroupSpec::new(Family::GL, 4).with_sigma(SigmaSpec::Perm(vec![0, 0, 1]));
        assert!(RootDatum::build(&spec).is_err());
        assert!(GroupSpec::new(Family::Sp, 3).validate().is_err());
    }

    #[test]
    fn pairing_examples() {
        let g2 = gl(2);
        assert_eq!(g2.pairing(&[1, -1], &[q(1), q(0)]).unwrap(), q(1));
        assert_eq!(
            g2.pairing(&[1, -1], &[Q::new(1, 2), Q::new(1, 2)]).unwrap(),
            q(0)
        );
        assert_eq!(
            gl(3).pairing(&[1, -1, 0], &[q(1), q(0), q(0)]).unwrap(),
            q(1)
        );
        assert!(matches!(
            g2.pairing(&[1, -1, 0], &[q(1), q(0)]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn dominance_examples() {
        let g2 = gl(2);
        assert!(g2.is_dominant_int(&[1, 0]));
        assert!(!g2.is_dominant_int(&[0, 1]));
        let third = Q::new(1, 3);
        assert!(gl(3).is_dominant(&[third, third, third]));
    }

    #[test]
    fn root_datum_invariants() {
        for d in all_data() {
            for i in 0..d.num_roots() {
                assert_eq!(dot(&d.roots[i], &d.coroots[i]), 2, "{}", d.spec.name());
                let c = d
                    .simple_root_coefficients(i)
                    .expect("root in span of simple roots");
                assert!(c.iter().all(|x| x.is_integer()));
                let all_nonneg = c.iter().all(|x| !x.is_negative());
                let all_nonpos = c.iter().all(|x| !x.is_positive());
                assert!(all_nonneg || all_nonpos);
                assert_eq!(all_nonneg, d.is_positive[i]);
            }
            // sigma permutes positive roots and keeps the coroot lattice.
            for &i in &d.positive_indices {
                assert!(d.is_positive[d.sigma_roots[i]]);
            }
            for s in 0..d.semisimple_rank() {
                let img = d.sigma_apply(d.simple_coroot(s));
                let c = d.simple_coroot_coefficients(&to_rat(&img)).unwrap();
                assert!(c.iter().all(|x| x.is_integer()));
            }
        }
    }

    #[test]
    fn sl_coordinates_round_trip() {
        let d = RootDatum::build(&GroupSpec::new(Family::SL, 4)).unwrap();
        let v = d.cochar_from_matrix_coords(&[2, -1, 0, -1]).unwrap();
        assert_eq!(v, vec![2, 1, 1]);
        assert_eq!(
            d.type_a_ambient(&to_rat(&v)).unwrap(),
            to_rat(&[2, -1, 0, -1])
        );
        assert!(d.cochar_from_matrix_coords(&[1, 0, 0, 0]).is_err());
    }

    proptest! {
        #[test]
        fn sigma_preserves_dominance(idx in 0usize..26, v in proptest::collection::vec(-4i64..5, 6)) {
            let data = all_data();
            let d = &data[idx % data.len()];
            let v = &v[..d.cochar_rank];
            prop_assert_eq!(d.is_dominant_int(v), d.is_dominant_int(&d.sigma_apply(v)));
        }

        #[test]
        fn dominant_vector_sorts_type_a(v in proptest::collection::vec(-5i64..6, 4)) {
            let d = gl(4);
            let mut sorted = v.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(d.dominant_vector(&to_rat(&v)), to_rat(&sorted));
        }
    }
}
