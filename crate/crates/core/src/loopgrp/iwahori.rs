//! Block LU factorization in `K_χ`.
//!
//! For dominant `χ` the blocks are the maximal runs of equal entries. An
//! element `c ∈ K_χ` factors as `c = u₋ · u₊ · m₀` with `u₋` block lower
//! unipotent (still in `K_χ`), `u₊` block upper unipotent and `m₀` block
//! diagonal in `K`.

use super::ring::{LoopMatrix, TruncRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct IwahoriFactors {
    pub lower: LoopMatrix,
    pub upper: LoopMatrix,
    pub levi: LoopMatrix,
    pub blocks: Vec<std::ops::Range<usize>>,
}

fn blocks_of(chi: &[i64]) -> Vec<std::ops::Range<usize>> {
    let mut out = vec![];
    let mut start = 0;
    for i in 1..=chi.len() {
        if i == chi.len() || chi[i] != chi[start] {
            out.push(start..i);
            start = i;
        }
    }
    out
}

fn block_of(blocks: &[std::ops::Range<usize>], i: usize) -> usize {
    blocks
        .iter()
        .position(|b| b.contains(&i))
        .expect("index in some block")
}

fn sub(
    r: &TruncRing,
    a: &LoopMatrix,
    rows: &std::ops::Range<usize>,
    cols: &std::ops::Range<usize>,
) -> LoopMatrix {
    let mut out = LoopMatrix::zeros(r, rows.len());
    debug_assert_eq!(rows.len(), cols.len());
    for (i, ri) in rows.clone().enumerate() {
        for (j, cj) in cols.clone().enumerate() {
            out.set(i, j, a.get(ri, cj).clone());
        }
    }
    out
}

/// Factors `c = lower · upper · levi`.
pub fn iwahori_factorize(r: &TruncRing, c: &LoopMatrix, chi: &[i64]) -> Result<IwahoriFactors> {
    let n = c.n;
    if chi.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: chi.len(),
        });
    }
    if chi.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant(format!("{chi:?}")));
    }
    if !r.in_k_chi(c, chi) {
        return Err(Error::NotInKChi(
            "entry valuations or determinant violate the bounds".into(),
        ));
    }
    let blocks = blocks_of(chi);
    let mut rem = c.clone();
    let mut lower = LoopMatrix::identity(r, n);
    for (bi, b) in blocks.iter().enumerate() {
        let pinv = r
            .mat_inv(&sub(r, &rem, b, b))
            .ok_or_else(|| Error::NotInKChi("diagonal block is singular mod t".into()))?;
        for later in &blocks[bi + 1..] {
            let mut f = vec![vec![r.zero(); b.len()]; later.len()];
            for (i, ri) in later.clone().enumerate() {
                for j in 0..b.len() {
                    let mut acc = r.zero();
                    for (k, ck) in b.clone().enumerate() {
                        acc = r.add(&acc, &r.mul(rem.get(ri, ck), pinv.get(k, j)));
                    }
                    f[i][j] = acc;
                }
            }
            for (i, ri) in later.clone().enumerate() {
                for (j, cj) in b.clone().enumerate() {
                    lower.set(ri, cj, f[i][j].clone());
                }
                for col in 0..n {
                    let mut acc = rem.get(ri, col).clone();
                    for (k, bk) in b.clone().enumerate() {
                        acc = r.sub(&acc, &r.mul(&f[i][k], rem.get(bk, col)));
                    }
                    rem.set(ri, col, acc);
                }
            }
        }
    }
    // rem is block upper triangular; split off its diagonal blocks.
    let mut levi = LoopMatrix::zeros(r, n);
    let mut levi_inv = LoopMatrix::zeros(r, n);
    for b in &blocks {
        let d = sub(r, &rem, b, b);
        let di = r
            .mat_inv(&d)
            .ok_or_else(|| Error::NotInKChi("Levi block is singular mod t".into()))?;
        for (i, ri) in b.clone().enumerate() {
            for (j, cj) in b.clone().enumerate() {
                levi.set(ri, cj, d.get(i, j).clone());
                levi_inv.set(ri, cj, di.get(i, j).clone());
            }
        }
    }
    let upper = r.mat_mul(&rem, &levi_inv);
    let out = IwahoriFactors {
        lower,
        upper,
        levi,
        blocks,
    };
    check_factors(r, c, chi, &out)?;
    Ok(out)
}

/// Re-verifies the product and the shape of each factor.
pub fn check_factors(r: &TruncRing, c: &LoopMatrix, chi: &[i64], f: &IwahoriFactors) -> Result<()> {
    let n = c.n;
    let prod = r.mat_mul(&r.mat_mul(&f.lower, &f.upper), &f.levi);
    if prod != *c {
        return Err(Error::Consistency(
            "factor product differs from the input".into(),
        ));
    }
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (block_of(&f.blocks, i), block_of(&f.blocks, j));
            let diag_one = |m: &LoopMatrix| {
                if i == j {
                    *m.get(i, j) == r.one()
                } else {
                    r.is_zero(m.get(i, j))
                }
            };
            if bi == bj {
                if !diag_one(&f.lower) || !diag_one(&f.upper) {
                    return Err(Error::Consistency(format!(
                        "unipotent factor not unipotent at ({i}, {j})"
                    )));
                }
            } else if bi < bj {
                if !r.is_zero(f.lower.get(i, j)) || !r.is_zero(f.levi.get(i, j)) {
                    return Err(Error::Consistency(format!(
                        "lower or Levi factor nonzero at ({i}, {j})"
                    )));
                }
            } else if !r.is_zero(f.upper.get(i, j)) || !r.is_zero(f.levi.get(i, j)) {
                return Err(Error::Consistency(format!(
                    "upper or Levi factor nonzero at ({i}, {j})"
                )));
            }
        }
    }
    if !r.in_k_chi(&f.lower, chi) || !r.in_k(&f.upper) || !r.in_k(&f.levi) {
        return Err(Error::Consistency("a factor left its subgroup".into()));
    }
    Ok(())
}

/// Random element of `K_χ` over the ring's coefficient field.
pub fn random_k_chi(r: &TruncRing, chi: &[i64], rng: &mut impl rand::Rng) -> LoopMatrix {
    let n = chi.len();
    loop {
        let mut g = r.random_matrix(n, rng);
        for i in 0..n {
            for j in 0..n {
                let need = (chi[j] - chi[i]).max(0) as usize;
                let e = g.entries[i * n + j].iter_mut();
                for c in e.take(need) {
                    *c = 0;
                }
            }
        }
        if r.in_k(&g) {
            return g;
        }
    }
}
