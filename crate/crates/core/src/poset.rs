//! Finite posets stored as relation bitsets, with DOT and JSON export.

use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    words: usize,
    /// `rows[i]` has bit `j` set iff `i <= j`.
    rows: Vec<Vec<u64>>,
}

impl Poset {
    /// Builds the relation `leq(i, j)`; rows are computed in parallel.
    pub fn from_fn<F>(n: usize, leq: F) -> Poset
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let words = n.div_ceil(64).max(1);
        let rows = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in 0..n {
                    if leq(i, j) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        Poset { n, words, rows }
    }

    pub fn try_from_fn<F>(n: usize, leq: F) -> Result<Poset>
    where
        F: Fn(usize, usize) -> Result<bool> + Sync,
    {
        let words = n.div_ceil(64).max(1);
        let rows = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in 0..n {
                    if leq(i, j)? {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poset { n, words, rows })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if !self.leq(i, i) {
                return Err(Error::Consistency(format!(
                    "relation is not reflexive at {i}"
                )));
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::Consistency(format!(
                        "relation is not antisymmetric: {i} and {j}"
                    )));
                }
            }
        }
        // a <= b and b <= c imply a <= c: every up-set of b is inside the up-set of a.
        let bad = (0..self.n).into_par_iter().find_map_any(|a| {
            for b in 0..self.n {
                if !self.leq(a, b) {
                    continue;
                }
                for w in 0..self.words {
                    let missing = self.rows[b][w] & !self.rows[a][w];
                    if missing != 0 {
                        let c = w * 64 + missing.trailing_zeros() as usize;
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = bad {
            return Err(Error::Consistency(format!(
                "relation is not transitive: {a} <= {b} <= {c} but not {a} <= {c}"
            )));
        }
        Ok(())
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| (0..self.n).all(|j| !self.lt(i, j)))
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| (0..self.n).all(|j| !self.lt(j, i)))
            .collect()
    }

    /// Strict relations `i < j` as pairs.
    pub fn relations(&self) -> Vec<[usize; 2]> {
        let mut out = vec![];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) {
                    out.push([i, j]);
                }
            }
        }
        out
    }

    /// Covering pairs `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<[usize; 2]> {
        let mut out = vec![];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) && !(0..self.n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push([i, j]);
                }
            }
        }
        out
    }

    pub fn down_set(&self, j: usize) -> Vec<usize> {
        (0..self.n).filter(|&i| self.leq(i, j)).collect()
    }

    /// Hasse diagram; edges point from the smaller to the larger element.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n", name.replace('"', "'"));
        for (i, l) in labels.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", l.replace('"', "'")));
        }
        for [a, b] in self.covers() {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Edges `nA -> nB` of a DOT file written by [`Poset::to_dot`].
pub fn parse_dot_edges(dot: &str) -> Vec<[usize; 2]> {
    dot.lines()
        .filter_map(|l| {
            let l = l.trim().trim_end_matches(';');
            let (a, b) = l.split_once("->")?;
            let a = a.trim().strip_prefix('n')?.parse().ok()?;
            let b = b.trim().strip_prefix('n')?.parse().ok()?;
            Some([a, b])
        })
        .collect()
}

#[derive(Serialize)]
pub struct PosetJson<T: Serialize> {
    pub nodes: Vec<T>,
    pub relations: Vec<[usize; 2]>,
    pub covers: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_poset() {
        let p = Poset::from_fn(12, |i, j| (j + 1) % (i + 1) == 0);
        p.validate().unwrap();
        assert_eq!(p.minimal(), vec![0]);
        assert!(p.covers().contains(&[0, 1]));
        assert!(!p.covers().contains(&[0, 3]));
        let dot = p.to_dot("div", &(1..=12).map(|i| i.to_string()).collect::<Vec<_>>());
        let mut edges = parse_dot_edges(&dot);
        edges.sort();
        assert_eq!(edges, p.covers());
    }

    #[test]
    fn detects_non_transitive() {
        let p = Poset::from_fn(3, |i, j| i == j || j == i + 1);
        assert!(matches!(p.validate(), Err(Error::Consistency(m)) if m.contains("transitive")));
        let q = Poset::from_fn(2, |_, _| true);
        assert!(q.validate().is_err());
    }
}
