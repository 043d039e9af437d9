//! Newton polygons for `GL_n`, used as an independent description of `B(G, μ)`.
//!
//! Slopes are listed in non-increasing order. A polygon `ν` lies below `μ`
//! (`ν ≼ μ`) when every partial sum of `ν` is at most the matching partial sum
//! of `μ` and the totals agree.

use crate::lattice::Q;
use num_traits::Zero;

fn partial_sums(v: &[Q]) -> Vec<Q> {
    let mut acc = Q::zero();
    v.iter()
        .map(|x| {
            acc += *x;
            acc
        })
        .collect()
}

pub fn polygon_leq(nu: &[Q], mu: &[Q]) -> bool {
    let (a, b) = (partial_sums(nu), partial_sums(mu));
    a.last() == b.last() && a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// All slope vectors with integral breakpoints lying below the Hodge polygon of `mu`.
///
/// `mu` must be sorted non-increasingly.
pub fn polygons_below(mu: &[i64]) -> Vec<Vec<Q>> {
    let n = mu.len();
    let hodge: Vec<Q> = mu.iter().map(|&x| Q::from_integer(x)).collect();
    let hodge_sums = partial_sums(&hodge);
    let total: i64 = mu.iter().sum();
    let lo = *mu.iter().min().unwrap_or(&0);
    let hi = *mu.iter().max().unwrap_or(&0);
    let mut out = vec![];
    let mut blocks: Vec<(usize, i64)> = vec![];
    extend(n, 0, 0, total, lo, hi, &hodge_sums, &mut blocks, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    n: usize,
    used: usize,
    sum: i64,
    total: i64,
    lo: i64,
    hi: i64,
    hodge_sums: &[Q],
    blocks: &mut Vec<(usize, i64)>,
    out: &mut Vec<Vec<Q>>,
) {
    if used == n {
        if sum == total {
            let mut v = vec![];
            for &(m, a) in blocks.iter() {
                v.extend(std::iter::repeat_n(Q::new(a, m as i64), m));
            }
            out.push(v);
        }
        return;
    }
    for m in 1..=n - used {
        for a in (m as i64 * lo)..=(m as i64 * hi) {
            let slope = Q::new(a, m as i64);
            if let Some(&(pm, pa)) = blocks.last() {
                if slope >= Q::new(pa, pm as i64) {
                    continue;
                }
            }
            // Breakpoint condition; between breakpoints the polygon is linear and
            // the Hodge polygon is concave, so checking each point is needed.
            let base = Q::from_integer(sum);
            let ok = (1..=m)
                .all(|k| base + slope * Q::from_integer(k as i64) <= hodge_sums[used + k - 1]);
            if !ok {
                continue;
            }
            blocks.push((m, a));
            extend(n, used + m, sum + a, total, lo, hi, hodge_sums, blocks, out);
            blocks.pop();
        }
    }
}
