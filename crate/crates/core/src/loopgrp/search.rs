//! Searching for `h` with `h g σ(h)^{-1} = μ` in a truncated loop group.
//!
//! The equation `h g = μ σ(h)` is linear over the prime field, so the
//! solutions modulo `t^N` form an `F_p`-subspace. We compute it exactly, then
//! look for an element whose reduction mod `t` is invertible (or upper
//! triangular and invertible for the Iwahori version). When the relevant part
//! of the subspace is small it is enumerated completely, which makes a
//! negative answer a proof for that field degree.

use super::fplin::{combine, kernel, split_on};
use super::ring::{LoopMatrix, Series, TruncRing};
use crate::error::{Error, Result};
use crate::field::{GaloisField, MAX_DEGREE};
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    /// `h ∈ K`.
    K,
    /// `h` in the standard Iwahori.
    Iwahori,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchPolicy {
    /// Field degrees over `F_q` to try, in order.
    pub m_schedule: Vec<u32>,
    /// Enumerate completely when the candidate space has at most this many elements.
    pub exhaustive_limit: u64,
    /// Random candidates per field degree otherwise.
    pub random_tries: usize,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            m_schedule: (1..=MAX_DEGREE).collect(),
            exhaustive_limit: 1 << 16,
            random_tries: 256,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Attempt {
    pub m: u32,
    pub kernel_dim: usize,
    pub level0_dim: usize,
    pub exhaustive: bool,
    pub found: bool,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found {
        m: u32,
        ring: TruncRing,
        h: LoopMatrix,
    },
    /// Every degree in the schedule was searched completely.
    ProvenNone,
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub attempts: Vec<Attempt>,
}

struct Unknowns {
    /// (row, col, level) of each unknown coefficient.
    slots: Vec<(usize, usize, usize)>,
    k: usize,
}

impl Unknowns {
    fn new(n: usize, prec: usize, k: u32, kind: SearchKind) -> Unknowns {
        let mut slots = vec![];
        for level in 0..prec {
            for i in 0..n {
                for j in 0..n {
                    if kind == SearchKind::Iwahori && level == 0 && i > j {
                        continue;
                    }
                    slots.push((i, j, level));
                }
            }
        }
        Unknowns {
            slots,
            k: k as usize,
        }
    }

    fn dim(&self) -> usize {
        self.slots.len() * self.k
    }

    fn level0_coords(&self) -> Vec<usize> {
        let mut out = vec![];
        for (s, &(_, _, level)) in self.slots.iter().enumerate() {
            if level == 0 {
                out.extend(s * self.k..(s + 1) * self.k);
            }
        }
        out
    }

    fn decode(&self, r: &TruncRing, n: usize, v: &[u32]) -> LoopMatrix {
        let mut h = LoopMatrix::zeros(r, n);
        for (s, &(i, j, level)) in self.slots.iter().enumerate() {
            h.entries[i * n + j][level] = r.field.from_digits(&v[s * self.k..(s + 1) * self.k]);
        }
        h
    }

    fn basis_vector(&self, r: &TruncRing, n: usize, idx: usize) -> LoopMatrix {
        let mut v = vec![0; self.dim()];
        v[idx] = 1;
        self.decode(r, n, &v)
    }
}

fn flatten(r: &TruncRing, a: &LoopMatrix) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.entries.len() * r.prec * r.field.k as usize);
    for e in &a.entries {
        for &c in e {
            out.extend(r.field.digits(c));
        }
    }
    out
}

/// Determinant of a square matrix over the field.
pub fn field_det(f: &GaloisField, mut a: Vec<Vec<u32>>) -> u32 {
    let n = a.len();
    let mut det = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = f.neg(det);
        }
        det = f.mul(det, a[c][c]);
        let inv = f.inv(a[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            if a[r][c] != 0 {
                let factor = f.mul(a[r][c], inv);
                for j in c..n {
                    let v = f.sub(a[r][j], f.mul(factor, a[c][j]));
                    a[r][j] = v;
                }
            }
        }
    }
    det
}

fn acceptable(r: &TruncRing, h0: &[Vec<u32>], kind: SearchKind) -> bool {
    match kind {
        SearchKind::K => field_det(&r.field, h0.to_vec()) != 0,
        SearchKind::Iwahori => {
            (0..h0.len()).all(|i| h0[i][i] != 0 && (0..i).all(|j| h0[i][j] == 0))
        }
    }
}

/// Searches `h` (in `K` or the Iwahori) with `h g σ(h)^{-1} = μ` over `F_{q^m}` for `m` in the schedule.
///
/// `g` and `mu` live over `base`; every witness is re-verified by multiplication.
pub fn find_conjugator(
    base: &TruncRing,
    g: &LoopMatrix,
    mu: &LoopMatrix,
    kind: SearchKind,
    policy: &SearchPolicy,
    rng: &mut impl Rng,
) -> Result<SearchResult> {
    let n = g.n;
    let mut attempts = vec![];
    let mut all_exhaustive = true;
    for &m in &policy.m_schedule {
        if m % base.m() != 0 {
            return Err(Error::InvalidSpec(format!(
                "degree {m} does not contain the base field of degree {}",
                base.m()
            )));
        }
        if base.e * m > MAX_DEGREE {
            return Err(Error::UnsupportedField(format!(
                "F_q^{m} with q = {} is beyond the field tables",
                base.q()
            )));
        }
        let r = base.with_degree(m)?;
        let (gm, mum) = (r.mat_embed(base, g)?, r.mat_embed(base, mu)?);
        let unknowns = Unknowns::new(n, r.prec, r.field.k, kind);
        let images: Vec<Vec<u32>> = (0..unknowns.dim())
            .map(|idx| {
                let h = unknowns.basis_vector(&r, n, idx);
                let lhs = r.mat_mul(&h, &gm);
                let rhs = r.mat_mul(&mum, &r.mat_sigma(&h));
                flatten(&r, &r.mat_sub(&lhs, &rhs))
            })
            .collect();
        let p = r.p();
        let ker = kernel(p, &images);
        let kernel_dim = ker.len();
        let coords = unknowns.level0_coords();
        let (indep, _) = split_on(p, ker, &coords);
        let r0 = indep.len();
        // Level-0 projections of the independent generators, as field matrices.
        let proj: Vec<Vec<Vec<u32>>> = indep
            .iter()
            .map(|v| unknowns.decode(&r, n, v).level(0))
            .collect();
        let combo_level0 = |coeffs: &[u32]| -> Vec<Vec<u32>> {
            let mut h0 = vec![vec![0u32; n]; n];
            for (pm, &c) in proj.iter().zip(coeffs) {
                if c == 0 {
                    continue;
                }
                let cf = r.field.from_prime(c);
                for i in 0..n {
                    for j in 0..n {
                        h0[i][j] = r.field.add(h0[i][j], r.field.mul(cf, pm[i][j]));
                    }
                }
            }
            h0
        };
        let space = (p as u64).checked_pow(r0 as u32);
        let exhaustive = space.is_some_and(|s| s <= policy.exhaustive_limit);
        let mut hit: Option<Vec<u32>> = None;
        if exhaustive {
            let mut coeffs = vec![0u32; r0];
            loop {
                if acceptable(&r, &combo_level0(&coeffs), kind) {
                    hit = Some(coeffs.clone());
                    break;
                }
                // Odometer increment.
                let mut pos = 0;
                while pos < r0 && coeffs[pos] == p - 1 {
                    coeffs[pos] = 0;
                    pos += 1;
                }
                if pos == r0 {
                    break;
                }
                coeffs[pos] += 1;
            }
        } else {
            all_exhaustive = false;
            for _ in 0..policy.random_tries {
                let coeffs: Vec<u32> = (0..r0).map(|_| rng.gen_range(0..p)).collect();
                if acceptable(&r, &combo_level0(&coeffs), kind) {
                    hit = Some(coeffs);
                    break;
                }
            }
        }
        attempts.push(Attempt {
            m,
            kernel_dim,
            level0_dim: r0,
            exhaustive,
            found: hit.is_some(),
        });
        if let Some(coeffs) = hit {
            let h = unknowns.decode(&r, n, &combine(p, &indep, &coeffs));
            verify_witness(&r, &h, &gm, &mum, kind)?;
            return Ok(SearchResult {
                outcome: SearchOutcome::Found { m, ring: r, h },
                attempts,
            });
        }
    }
    let outcome = if all_exhaustive {
        SearchOutcome::ProvenNone
    } else {
        SearchOutcome::Unresolved
    };
    Ok(SearchResult { outcome, attempts })
}

/// Checks membership of `h` and `h g σ(h)^{-1} = μ` by direct multiplication.
pub fn verify_witness(
    r: &TruncRing,
    h: &LoopMatrix,
    g: &LoopMatrix,
    mu: &LoopMatrix,
    kind: SearchKind,
) -> Result<()> {
    let member = match kind {
        SearchKind::K => r.in_k(h),
        SearchKind::Iwahori => r.in_iwahori(h),
    };
    if !member {
        return Err(Error::Consistency(format!("witness is not in {kind:?}")));
    }
    if r.sigma_conjugate(h, g)? != *mu {
        return Err(Error::Consistency(
            "witness does not σ-conjugate g to μ".into(),
        ));
    }
    Ok(())
}

/// Finds diagonal `x ∈ T(O)` with `x^{-1} σ(x) = c` for diagonal `c ∈ T(O)`.
///
/// Tries field degrees that are multiples of the ring's degree, up to `m_cap`.
pub fn solve_torus_lang(
    base: &TruncRing,
    c: &LoopMatrix,
    m_cap: u32,
) -> Result<(TruncRing, LoopMatrix)> {
    let n = c.n;
    for i in 0..n {
        for j in 0..n {
            if i != j && !base.is_zero(c.get(i, j)) {
                return Err(Error::Precondition("torus element must be diagonal".into()));
            }
        }
        if !base.is_unit(c.get(i, i)) {
            return Err(Error::Precondition(format!(
                "diagonal entry {i} is not a unit"
            )));
        }
    }
    let m0 = base.m();
    let mut m = m0;
    while m <= m_cap && base.e * m <= MAX_DEGREE {
        let r = base.with_degree(m)?;
        let cm = r.mat_embed(base, c)?;
        let k = r.field.k as usize;
        let dim = r.prec * k;
        let mut diag: Vec<Series> = vec![];
        for i in 0..n {
            let ci = cm.get(i, i);
            let images: Vec<Vec<u32>> = (0..dim)
                .map(|idx| {
                    let mut x = r.zero();
                    let mut digits = vec![0; k];
                    digits[idx % k] = 1;
                    x[idx / k] = r.field.from_digits(&digits);
                    let img = r.sub(&r.sigma(&x), &r.mul(&x, ci));
                    img.iter().flat_map(|&v| r.field.digits(v)).collect()
                })
                .collect();
            let ker = kernel(r.p(), &images);
            let (indep, _) = split_on(r.p(), ker, &(0..k).collect::<Vec<_>>());
            let Some(v) = indep.first() else { break };
            let x: Series = v.chunks(k).map(|d| r.field.from_digits(d)).collect();
            diag.push(x);
        }
        if diag.len() == n {
            let x = r.diagonal(&diag);
            let xinv = r
                .mat_inv(&x)
                .ok_or_else(|| Error::Consistency("torus solution not a unit".into()))?;
            if r.mat_mul(&xinv, &r.mat_sigma(&x)) != cm {
                return Err(Error::Consistency(
                    "torus solution fails x^{-1}σ(x) = c".into(),
                ));
            }
            return Ok((r, x));
        }
        m += m0;
    }
    Err(Error::NotFound(m_cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn torus_lang_over_f4() {
        // c = diag(ω, 1) over F_4: x = ω works since σ(ω)/ω = ω.
        let r = TruncRing::new(2, 1, 2, 2).unwrap();
        let w = r.field.generator();
        let c = r.diagonal(&[r.constant(w), r.one()]);
        let (r2, x) = solve_torus_lang(&r, &c, 12).unwrap();
        assert_eq!(r2.m(), 2);
        assert_eq!(r2.mat_mul(&r2.mat_inv(&x).unwrap(), &r2.mat_sigma(&x)), c);
    }

    #[test]
    fn torus_lang_random_units() {
        let r = TruncRing::new(2, 1, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let c = r.diagonal(&[r.random_unit(&mut rng), r.random_unit(&mut rng)]);
            let (r2, x) = solve_torus_lang(&r, &c, 12).unwrap();
            assert!(r2.m() <= 12);
            let cm = r2.mat_embed(&r, &c).unwrap();
            assert_eq!(r2.mat_mul(&r2.mat_inv(&x).unwrap(), &r2.mat_sigma(&x)), cm);
        }
    }

    #[test]
    fn conjugates_k1_mu_k1() {
        let r = TruncRing::new(2, 1, 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mu = r.monomial_matrix(&[1, 0], &[0, 1]).unwrap();
        for _ in 0..10 {
            let g = r.mat_mul(
                &r.mat_mul(&r.random_base_k1(2, &mut rng).unwrap(), &mu),
                &r.random_base_k1(2, &mut rng).unwrap(),
            );
            let policy = SearchPolicy {
                m_schedule: vec![1, 2],
                ..Default::default()
            };
            let res = find_conjugator(&r, &g, &mu, SearchKind::K, &policy, &mut rng).unwrap();
            assert!(
                matches!(res.outcome, SearchOutcome::Found { .. }),
                "{:?}",
                res.attempts
            );
        }
    }

    #[test]
    fn no_conjugator_across_cartan_cells() {
        // diag(t, t) is not σ-conjugate to diag(t^2, 1) under K: Cartan invariants differ.
        let r = TruncRing::new(2, 1, 1, 3).unwrap();
        let g = r.monomial_matrix(&[1, 1], &[0, 1]).unwrap();
        let mu = r.monomial_matrix(&[2, 0], &[0, 1]).unwrap();
        let policy = SearchPolicy {
            m_schedule: vec![1, 2],
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let res = find_conjugator(&r, &g, &mu, SearchKind::K, &policy, &mut rng).unwrap();
        assert!(matches!(res.outcome, SearchOutcome::ProvenNone));
    }

    #[test]
    fn field_det_matches_ring_det() {
        let r = TruncRing::new(3, 1, 2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let a = r.random_matrix(3, &mut rng);
            assert_eq!(field_det(&r.field, a.level(0)), r.det(&a)[0]);
        }
    }
}
