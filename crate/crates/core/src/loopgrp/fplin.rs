//! Dense linear algebra over the prime field `F_p`.

fn inv_mod(p: u32, a: u32) -> u32 {
    (1..p).find(|x| x * a % p == 1).expect("nonzero residue")
}

/// Basis of the kernel of the map sending basis vector `c` to `images[c]`.
pub fn kernel(p: u32, images: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let cols = images.len();
    if cols == 0 {
        return vec![];
    }
    let rows = images[0].len();
    let mut a: Vec<Vec<u32>> = (0..rows)
        .map(|r| images.iter().map(|col| col[r] % p).collect())
        .collect();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let s = inv_mod(p, a[r][c]);
        for x in a[r].iter_mut() {
            *x = *x * s % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = vec![];
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[row][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Re-bases `vectors` so that the first returned block has linearly independent
/// restrictions to `coords` and the second block restricts to zero there.
pub fn split_on(
    p: u32,
    vectors: Vec<Vec<u32>>,
    coords: &[usize],
) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut rest = vectors;
    let mut independent = vec![];
    for &c in coords {
        let Some(k) = rest.iter().position(|v| v[c] != 0) else {
            continue;
        };
        let mut piv = rest.swap_remove(k);
        let s = inv_mod(p, piv[c]);
        for x in piv.iter_mut() {
            *x = *x * s % p;
        }
        for v in rest.iter_mut().chain(independent.iter_mut()) {
            let f = v[c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(&piv) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        independent.push(piv);
    }
    (independent, rest)
}

/// `Σ coeffs[i] · basis[i]`.
pub fn combine(p: u32, basis: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    let len = basis.first().map_or(0, Vec::len);
    let mut out = vec![0; len];
    for (v, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            for (x, y) in out.iter_mut().zip(v) {
                *x = (*x + c * y) % p;
            }
        }
    }
    out
}
