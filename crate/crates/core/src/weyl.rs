//! Finite Weyl groups: enumeration, Bruhat order, parabolic subgroups,
//! minimal coset representatives and the twisted order on them.

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, Q};
use crate::poset::Poset;
use crate::rootdata::{RatCochar, RootDatum};
use num_traits::Signed;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

pub const MAX_WEYL_ORDER: usize = 10_000_000;

/// Element of W acting on cocharacters, with its lexicographically smallest reduced word.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub action: IntMatrix,
    /// Simple-reflection positions, 0-based; the element is `s_word[0] * s_word[1] * ...`.
    pub word: Vec<usize>,
    pub length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state)
    }
}

impl WeylElement {
    /// `s1s2` style with 1-based letters; the identity is `1`.
    pub fn word_string(&self) -> String {
        word_string(&self.word)
    }
}

pub fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|s| format!("s{}", s + 1)).collect()
    }
}

/// Subset of simple reflections, as positions into `simple_indices`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicType {
    pub j: BTreeSet<usize>,
}

impl ParabolicType {
    pub fn new<I: IntoIterator<Item = usize>>(it: I) -> Self {
        ParabolicType {
            j: it.into_iter().collect(),
        }
    }

    pub fn all(rank: usize) -> Self {
        Self::new(0..rank)
    }

    pub fn contains(&self, s: usize) -> bool {
        self.j.contains(&s)
    }

    pub fn mask(&self) -> u64 {
        self.j.iter().fold(0, |m, &s| m | 1 << s)
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.j.iter().map(|s| format!("s{}", s + 1)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// The whole Weyl group with multiplication tables by simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    /// `left[x][i]` is the index of `s_i * x`.
    left: Vec<Vec<usize>>,
    /// `right[x][i]` is the index of `x * s_i`.
    right: Vec<Vec<usize>>,
    /// Bit `i` set iff `x^{-1}(alpha_i) < 0`, i.e. `l(s_i x) < l(x)`.
    left_descents: Vec<u64>,
    inverse: Vec<usize>,
    sigma: Vec<usize>,
    w0: usize,
}

impl WeylGroup {
    pub fn generate(datum: &RootDatum) -> Result<WeylGroup> {
        let l = datum.semisimple_rank();
        let d = datum.cochar_rank;
        let gens: Vec<IntMatrix> = datum
            .simple_indices
            .iter()
            .map(|&i| datum.reflection_matrix(i))
            .collect();

        let mut mats = vec![IntMatrix::identity(d)];
        let mut seen: HashMap<IntMatrix, usize> = HashMap::new();
        seen.insert(mats[0].clone(), 0);
        let mut head = 0;
        while head < mats.len() {
            for g in &gens {
                let y = mats[head].mul(g);
                if !seen.contains_key(&y) {
                    if mats.len() >= MAX_WEYL_ORDER {
                        return Err(Error::WeylTooLarge(MAX_WEYL_ORDER));
                    }
                    seen.insert(y.clone(), mats.len());
                    mats.push(y);
                }
            }
            head += 1;
        }
        let n = mats.len();

        // x^{-1}(alpha) corresponds to the functional alpha∘x, i.e. x^T alpha.
        let neg_of_inverse = |x: &IntMatrix, root: &[i64]| -> bool {
            let img = x.transpose().apply(root);
            let k = datum.root_index(&img).expect("Weyl group permutes roots");
            !datum.is_positive[k]
        };
        let lengths: Vec<usize> = mats
            .iter()
            .map(|x| {
                datum
                    .positive_indices
                    .iter()
                    .filter(|&&i| neg_of_inverse(x, &datum.roots[i]))
                    .count()
            })
            .collect();
        let descents: Vec<u64> = mats
            .iter()
            .map(|x| {
                (0..l).fold(0u64, |m, s| {
                    if neg_of_inverse(x, datum.simple_root(s)) {
                        m | 1 << s
                    } else {
                        m
                    }
                })
            })
            .collect();
        let left_raw: Vec<Vec<usize>> = mats
            .iter()
            .map(|x| gens.iter().map(|g| seen[&g.mul(x)]).collect())
            .collect();

        // Lex-smallest reduced word: smallest left descent, then recurse.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| lengths[i]);
        let mut words: Vec<Vec<usize>> = vec![vec![]; n];
        for &x in &order {
            if lengths[x] == 0 {
                continue;
            }
            let s = descents[x].trailing_zeros() as usize;
            let rest = left_raw[x][s];
            debug_assert_eq!(lengths[rest] + 1, lengths[x]);
            let mut w = vec![s];
            w.extend_from_slice(&words[rest]);
            words[x] = w;
        }
        order.sort_by(|&a, &b| (lengths[a], &words[a]).cmp(&(lengths[b], &words[b])));
        let mut new_of_old = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let elements: Vec<WeylElement> = order
            .iter()
            .map(|&o| WeylElement {
                action: mats[o].clone(),
                word: words[o].clone(),
                length: lengths[o],
            })
            .collect();
        let index: HashMap<IntMatrix, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.action.clone(), i))
            .collect();
        let left: Vec<Vec<usize>> = order
            .iter()
            .map(|&o| left_raw[o].iter().map(|&y| new_of_old[y]).collect())
            .collect();
        let right: Vec<Vec<usize>> = elements
            .iter()
            .map(|e| gens.iter().map(|g| index[&e.action.mul(g)]).collect())
            .collect();
        let left_descents: Vec<u64> = order.iter().map(|&o| descents[o]).collect();
        let w0 = index[&datum.w0_cochar];

        let mut g = WeylGroup {
            datum: datum.clone(),
            elements,
            index,
            left,
            right,
            left_descents,
            inverse: vec![],
            sigma: vec![],
            w0,
        };
        g.inverse = (0..n)
            .map(|x| g.from_word(&g.elements[x].word.iter().rev().copied().collect::<Vec<_>>()))
            .collect();
        g.sigma = (0..n)
            .map(|x| {
                let w: Vec<usize> = g.elements[x]
                    .word
                    .iter()
                    .map(|&s| datum.sigma_simple[s])
                    .collect();
                g.from_word(&w)
            })
            .collect();
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.datum.semisimple_rank()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.elements[i].length
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.w0
    }

    pub fn simple_reflection(&self, s: usize) -> usize {
        self.left[0][s]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.action).copied()
    }

    pub fn index_of_matrix(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Product of simple reflections in the given order.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |x, &s| self.right[x][s])
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b]
            .word
            .iter()
            .fold(a, |x, &s| self.right[x][s])
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn left_mul_simple(&self, s: usize, x: usize) -> usize {
        self.left[x][s]
    }

    pub fn is_left_descent(&self, x: usize, s: usize) -> bool {
        self.left_descents[x] >> s & 1 == 1
    }

    /// `sigma * w * sigma^{-1}`.
    pub fn sigma(&self, a: usize) -> usize {
        self.sigma[a]
    }

    pub fn apply(&self, w: usize, v: &[i64]) -> Vec<i64> {
        self.elements[w].action.apply(v)
    }

    pub fn apply_q(&self, w: usize, v: &[Q]) -> Vec<Q> {
        self.elements[w].action.apply_q(v)
    }

    /// Subword criterion on the reduced word of `b`, using the lifting property.
    pub fn bruhat_leq(&self, a: usize, b: usize) -> bool {
        let (la, lb) = (self.length(a), self.length(b));
        if la > lb {
            return false;
        }
        let mut x = a;
        for (k, &s) in self.elements[b].word.iter().enumerate() {
            if self.length(x) > lb - k {
                return false;
            }
            if self.is_left_descent(x, s) {
                x = self.left[x][s];
            }
        }
        x == 0
    }

    pub fn in_parabolic(&self, x: usize, j: &ParabolicType) -> bool {
        self.elements[x].word.iter().all(|s| j.contains(*s))
    }

    pub fn parabolic_subgroup(&self, j: &ParabolicType) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| self.in_parabolic(x, j))
            .collect()
    }

    pub fn longest_element(&self, j: &ParabolicType) -> usize {
        self.parabolic_subgroup(j)
            .into_iter()
            .max_by_key(|&x| self.length(x))
            .expect("identity lies in W_J")
    }

    /// `w` is minimal in `W_J w` iff `w^{-1}` sends every simple root in `J` to a positive root.
    pub fn is_min_coset_rep(&self, w: usize, j: &ParabolicType) -> bool {
        self.left_descents[w] & j.mask() == 0
    }

    pub fn min_coset_reps(&self, j: &ParabolicType) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| self.is_min_coset_rep(x, j))
            .collect()
    }

    /// `(v+, w)` with `v+` dominant and `w(v) = v+`.
    pub fn dominant_representative(&self, v: &[Q]) -> (RatCochar, usize) {
        let d = &self.datum;
        let mut v = v.to_vec();
        let mut w = 0;
        while let Some(s) = (0..d.semisimple_rank())
            .find(|&s| crate::lattice::dot_q(d.simple_root(s), &v).is_negative())
        {
            v = d.reflect_q(d.simple_indices[s], &v);
            w = self.left[w][s];
        }
        (v, w)
    }

    pub fn orbit(&self, v: &[i64]) -> Vec<Vec<i64>> {
        let set: BTreeSet<Vec<i64>> = self.elements.iter().map(|e| e.action.apply(v)).collect();
        set.into_iter().collect()
    }

    pub fn parabolic(&self, j: &ParabolicType) -> Parabolic {
        Parabolic::new(self, j.clone())
    }
}

/// Data attached to `J` for the twisted order on `^J W`.
#[derive(Clone, Debug)]
pub struct Parabolic {
    pub j: ParabolicType,
    pub subgroup: Vec<usize>,
    pub reps: Vec<usize>,
    pub w0_j: usize,
    /// `x_J = w0 * w0_J`.
    pub x_j: usize,
    /// `sigma(x_J y^{-1} x_J^{-1})` for each `y` in `subgroup`.
    twist: Vec<usize>,
}

impl Parabolic {
    fn new(g: &WeylGroup, j: ParabolicType) -> Parabolic {
        let subgroup = g.parabolic_subgroup(&j);
        let reps = g.min_coset_reps(&j);
        let w0_j = g.longest_element(&j);
        let x_j = g.mul(g.longest(), w0_j);
        let x_inv = g.inv(x_j);
        let twist = subgroup
            .iter()
            .map(|&y| g.sigma(g.mul(g.mul(x_j, g.inv(y)), x_inv)))
            .collect();
        Parabolic {
            j,
            subgroup,
            reps,
            w0_j,
            x_j,
            twist,
        }
    }

    /// `w_max = w0_J * w0`.
    pub fn w_max(&self, g: &WeylGroup) -> usize {
        g.mul(self.w0_j, g.longest())
    }

    pub fn position(&self, w: usize) -> Option<usize> {
        self.reps.binary_search(&w).ok()
    }

    fn check_rep(&self, g: &WeylGroup, w: usize) -> Result<()> {
        if g.is_min_coset_rep(w, &self.j) {
            Ok(())
        } else {
            Err(Error::NotMinimalRep(format!(
                "{} for J = {}",
                g.element(w).word_string(),
                self.j.label()
            )))
        }
    }

    /// `w' ≼ w`: some `y` in `W_J` has `y w' sigma(x_J y^{-1} x_J^{-1}) <= w` in the Bruhat order.
    /// The twist is applied to `y^{-1}` so that the relation is transitive; without the
    /// inverse it already fails for `Sp_10` with `J = {s1, s2, s3}`.
    pub fn eo_leq(&self, g: &WeylGroup, w_prime: usize, w: usize) -> Result<bool> {
        self.check_rep(g, w_prime)?;
        self.check_rep(g, w)?;
        Ok(self.eo_leq_unchecked(g, w_prime, w))
    }

    fn eo_leq_unchecked(&self, g: &WeylGroup, w_prime: usize, w: usize) -> bool {
        self.subgroup
            .iter()
            .zip(&self.twist)
            .any(|(&y, &t)| g.bruhat_leq(g.mul(g.mul(y, w_prime), t), w))
    }

    /// Relation table on `reps`, validated as a partial order with the expected extremes.
    pub fn eo_poset(&self, g: &WeylGroup) -> Result<Poset> {
        let p = Poset::from_fn(self.reps.len(), |a, b| {
            self.eo_leq_unchecked(g, self.reps[a], self.reps[b])
        });
        p.validate()?;
        let max = p.maximal();
        let min = p.minimal();
        let w_max = self.w_max(g);
        let expect_max = self.position(w_max);
        if max.len() != 1 || Some(max[0]) != expect_max {
            return Err(Error::Consistency(format!(
                "maximal elements {:?}, expected w0_J w0 at {:?}",
                max, expect_max
            )));
        }
        if min != vec![0] || self.reps[0] != g.identity() {
            return Err(Error::Consistency(format!(
                "minimal elements {:?}, expected the identity",
                min
            )));
        }
        Ok(p)
    }
}
