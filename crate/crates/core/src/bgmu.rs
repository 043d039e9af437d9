//! The poset `B(G, μ)`, Levi subgroups `Cent(v)`, and the Hodge–Newton conditions.

use crate::affine::{AffineElement, GroupContext, KottwitzPoint, Pi1Coinvariants, TwistedAverager};
use crate::error::{Error, Result};
use crate::lattice::{dot_q, fmt_int_vec, fmt_rat_vec, to_rat, IntMatrix, Q};
use crate::polygon;
use crate::poset::Poset;
use crate::rootdata::{Cochar, Family, RatCochar};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashSet};

/// Newton point and Kottwitz point of a sigma-conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonClass {
    pub nu: RatCochar,
    pub kappa: KottwitzPoint,
}

#[derive(Clone, Debug)]
pub struct BGmuPoset {
    pub mu: Cochar,
    pub mu_bar: RatCochar,
    /// Sorted lexicographically by `nu`.
    pub elements: Vec<NewtonClass>,
    pub poset: Poset,
    pub max_index: usize,
    pub basic_index: usize,
    /// Whether the polygon cross-check ran (type A with trivial sigma).
    pub oracle_checked: bool,
}

impl BGmuPoset {
    pub fn b_max(&self) -> &NewtonClass {
        &self.elements[self.max_index]
    }

    pub fn basic(&self) -> &NewtonClass {
        &self.elements[self.basic_index]
    }

    pub fn position(&self, c: &NewtonClass) -> Option<usize> {
        self.elements.binary_search(c).ok()
    }
}

/// `ν' ≼ ν`: `ν - ν'` is a nonnegative combination of simple coroots.
pub fn newton_leq(ctx: &GroupContext, nu_prime: &[Q], nu: &[Q]) -> Result<bool> {
    let d = ctx.datum();
    if nu.len() != d.cochar_rank || nu_prime.len() != d.cochar_rank {
        return Err(Error::Dimension {
            expected: d.cochar_rank,
            got: nu.len().min(nu_prime.len()),
        });
    }
    let diff: Vec<Q> = nu.iter().zip(nu_prime).map(|(a, b)| *a - *b).collect();
    let coeffs = d
        .simple_coroot_coefficients(&diff)
        .ok_or(Error::Incomparable)?;
    Ok(coeffs.iter().all(|c| !c.is_negative()))
}

/// Dominant `λ ≤ μ`. Covers among dominant cocharacters differ by a positive coroot,
/// so a search that only passes through dominant vectors reaches all of them.
pub fn dominant_below(ctx: &GroupContext, mu: &[i64]) -> Vec<Cochar> {
    let d = ctx.datum();
    let mut seen: BTreeSet<Cochar> = BTreeSet::new();
    let mut queue = vec![mu.to_vec()];
    seen.insert(mu.to_vec());
    while let Some(v) = queue.pop() {
        for &i in &d.positive_indices {
            let w: Cochar = v.iter().zip(&d.coroots[i]).map(|(a, b)| a - b).collect();
            if d.is_dominant_int(&w) && seen.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Translations run over dominant `λ ≤ μ` and finite parts over all of `W`:
/// `x t^λ w σ(x)^{-1} = t^{xλ} x w σ(x)^{-1}` covers the rest of each double coset.
pub fn enumerate_bgmu(ctx: &GroupContext, mu: &[i64]) -> Result<BGmuPoset> {
    let d = ctx.datum();
    let g = &ctx.weyl;
    let mu_bar = ctx.mu_bar(mu)?;
    let mu_nat = ctx.mu_natural(mu);
    let below = dominant_below(ctx, mu);
    for lam in &below {
        if ctx.pi1.canonical(lam) != mu_nat {
            return Err(Error::Consistency(format!(
                "Kottwitz point of {} differs from that of μ",
                fmt_int_vec(lam)
            )));
        }
    }
    let nus: BTreeSet<RatCochar> = (0..g.order())
        .into_par_iter()
        .map(|w| -> Result<BTreeSet<RatCochar>> {
            let avg = TwistedAverager::new(d, &g.element(w).action)?;
            below.iter().map(|lam| avg.newton_point(ctx, lam)).collect()
        })
        .try_reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })?;
    let elements: Vec<NewtonClass> = nus
        .into_iter()
        .map(|nu| NewtonClass {
            nu,
            kappa: mu_nat.clone(),
        })
        .collect();
    for e in &elements {
        if !ctx.pi1.compatible(&e.kappa, &e.nu) {
            return Err(Error::Consistency(format!(
                "κ = {} incompatible with ν = {}",
                e.kappa,
                fmt_rat_vec(&e.nu)
            )));
        }
        if !newton_leq(ctx, &e.nu, &mu_bar)? {
            return Err(Error::Consistency(format!(
                "ν = {} is not below μ̄",
                fmt_rat_vec(&e.nu)
            )));
        }
    }
    let poset = Poset::try_from_fn(elements.len(), |i, j| {
        newton_leq(ctx, &elements[i].nu, &elements[j].nu)
    })?;
    poset.validate()?;

    let max = poset.maximal();
    if max.len() != 1 || elements[max[0]].nu != mu_bar {
        return Err(Error::Consistency(format!(
            "expected a unique maximal element with ν = μ̄, found {max:?}"
        )));
    }
    let basics: Vec<usize> = (0..elements.len())
        .filter(|&i| d.is_central(&elements[i].nu))
        .collect();
    if basics.len() != 1 {
        return Err(Error::Consistency(format!(
            "expected exactly one basic element, found {}",
            basics.len()
        )));
    }
    if poset.minimal() != basics {
        return Err(Error::Consistency(
            "the basic element is not the unique minimal element".into(),
        ));
    }

    let mut out = BGmuPoset {
        mu: mu.to_vec(),
        mu_bar,
        elements,
        poset,
        max_index: max[0],
        basic_index: basics[0],
        oracle_checked: false,
    };
    if matches!(d.spec.family, Family::GL | Family::SL) && d.sigma_is_identity() {
        polygon_cross_check(ctx, &out)?;
        out.oracle_checked = true;
    }
    Ok(out)
}

/// Compares the enumeration with the set of Newton polygons below the Hodge polygon.
pub fn polygon_cross_check(ctx: &GroupContext, b: &BGmuPoset) -> Result<()> {
    let d = ctx.datum();
    let hodge: Vec<i64> = d
        .type_a_ambient(&to_rat(&b.mu))
        .ok_or_else(|| Error::Precondition("polygon oracle needs a type A group".into()))?
        .iter()
        .map(|x| x.to_integer())
        .collect();
    let oracle: BTreeSet<Vec<Q>> = polygon::polygons_below(&hodge).into_iter().collect();
    let ours: Vec<Vec<Q>> = b
        .elements
        .iter()
        .map(|e| d.type_a_ambient(&e.nu).expect("type A"))
        .collect();
    let ours_set: BTreeSet<Vec<Q>> = ours.iter().cloned().collect();
    if oracle != ours_set {
        let only_ours: Vec<String> = ours_set
            .difference(&oracle)
            .map(|v| fmt_rat_vec(v))
            .collect();
        let only_oracle: Vec<String> = oracle
            .difference(&ours_set)
            .map(|v| fmt_rat_vec(v))
            .collect();
        return Err(Error::OracleMismatch(format!(
            "only in enumeration: [{}]; only in polygon oracle: [{}]",
            only_ours.join(" "),
            only_oracle.join(" ")
        )));
    }
    // Kottwitz point: the degree for GL_n, trivial for SL_n.
    let total: i64 = hodge.iter().sum();
    for e in &b.elements {
        let expected: Vec<i64> = if d.spec.family == Family::GL {
            vec![total]
        } else {
            vec![]
        };
        if e.kappa.value != expected {
            return Err(Error::OracleMismatch(format!(
                "κ = {} but the polygon endpoint is {total}",
                e.kappa
            )));
        }
    }
    for i in 0..ours.len() {
        for j in 0..ours.len() {
            if b.poset.leq(i, j) != polygon::polygon_leq(&ours[i], &ours[j]) {
                return Err(Error::OracleMismatch(format!(
                    "order differs on {} vs {}",
                    fmt_rat_vec(&ours[i]),
                    fmt_rat_vec(&ours[j])
                )));
            }
        }
    }
    Ok(())
}

pub fn b_max(ctx: &GroupContext, mu: &[i64]) -> Result<NewtonClass> {
    Ok(enumerate_bgmu(ctx, mu)?.b_max().clone())
}

pub fn basic_element(ctx: &GroupContext, mu: &[i64]) -> Result<NewtonClass> {
    Ok(enumerate_bgmu(ctx, mu)?.basic().clone())
}

/// Levi subgroup cut out by a set of roots closed under the usual operations.
#[derive(Clone, Debug)]
pub struct LeviDatum {
    /// Indices of `Φ_M` in the ambient root list.
    pub root_subset: Vec<usize>,
    /// `Φ_M ∩ Φ^+`.
    pub positive: Vec<usize>,
    /// Elements of `W_M` as matrices on cocharacters.
    pub weyl: Vec<IntMatrix>,
    weyl_set: HashSet<IntMatrix>,
    pub pi1: Pi1Coinvariants,
}

impl LeviDatum {
    pub fn from_roots(ctx: &GroupContext, roots: Vec<usize>) -> LeviDatum {
        let d = ctx.datum();
        let positive: Vec<usize> = roots
            .iter()
            .copied()
            .filter(|&i| d.is_positive[i])
            .collect();
        let gens: Vec<IntMatrix> = positive.iter().map(|&i| d.reflection_matrix(i)).collect();
        let mut weyl = vec![IntMatrix::identity(d.cochar_rank)];
        let mut weyl_set: HashSet<IntMatrix> = weyl.iter().cloned().collect();
        let mut head = 0;
        while head < weyl.len() {
            for s in &gens {
                let y = weyl[head].mul(s);
                if weyl_set.insert(y.clone()) {
                    weyl.push(y);
                }
            }
            head += 1;
        }
        let coroots: Vec<Vec<i64>> = roots.iter().map(|&i| d.coroots[i].clone()).collect();
        let pi1 = Pi1Coinvariants::new(d.cochar_rank, &coroots, &d.sigma_cochar);
        LeviDatum {
            root_subset: roots,
            positive,
            weyl,
            weyl_set,
            pi1,
        }
    }

    pub fn contains_weyl(&self, m: &IntMatrix) -> bool {
        self.weyl_set.contains(m)
    }

    pub fn is_torus(&self) -> bool {
        self.root_subset.is_empty()
    }

    /// M-dominant representative, reflecting in positive roots of M.
    pub fn dominant_vector(&self, ctx: &GroupContext, v: &[Q]) -> RatCochar {
        let d = ctx.datum();
        let mut v = v.to_vec();
        while let Some(&i) = self
            .positive
            .iter()
            .find(|&&i| dot_q(&d.roots[i], &v).is_negative())
        {
            v = d.reflect_q(i, &v);
        }
        v
    }
}

/// `M = Cent(v)`: roots pairing to zero with `v`.
pub fn levi_centralizer(ctx: &GroupContext, v: &[Q]) -> Result<LeviDatum> {
    let d = ctx.datum();
    if v.len() != d.cochar_rank {
        return Err(Error::Dimension {
            expected: d.cochar_rank,
            got: v.len(),
        });
    }
    if d.sigma_apply_q(v) != v {
        return Err(Error::NotSigmaStable(fmt_rat_vec(v)));
    }
    let roots = (0..d.num_roots())
        .filter(|&i| dot_q(&d.roots[i], v).is_zero())
        .collect();
    Ok(LeviDatum::from_roots(ctx, roots))
}

/// σ-average, then `W_M`-average.
pub fn project_to_vm(ctx: &GroupContext, m: &LeviDatum, v: &[Q]) -> Result<RatCochar> {
    let d = ctx.datum();
    let s = ctx.sigma_average(v);
    let mut acc = vec![Q::zero(); d.cochar_rank];
    for w in &m.weyl {
        for (a, x) in acc.iter_mut().zip(w.apply_q(&s)) {
            *a += x;
        }
    }
    let k = Q::from_integer(m.weyl.len() as i64);
    let out: RatCochar = acc.into_iter().map(|x| x / k).collect();
    if !in_vm(ctx, m, &out) {
        return Err(Error::Consistency(format!(
            "projection {} is not fixed by W_M and σ",
            fmt_rat_vec(&out)
        )));
    }
    Ok(out)
}

fn in_vm(ctx: &GroupContext, m: &LeviDatum, v: &[Q]) -> bool {
    ctx.datum().sigma_apply_q(v) == v
        && m.positive
            .iter()
            .all(|&i| dot_q(&ctx.datum().roots[i], v).is_zero())
}

/// `⟨α, v⟩ > 0` for every positive root outside `M`.
pub fn in_vm_plus(ctx: &GroupContext, m: &LeviDatum, v: &[Q]) -> Result<bool> {
    if !in_vm(ctx, m, v) {
        return Err(Error::NotInVM(fmt_rat_vec(v)));
    }
    let d = ctx.datum();
    let inside: HashSet<usize> = m.root_subset.iter().copied().collect();
    Ok(d.positive_indices
        .iter()
        .filter(|i| !inside.contains(i))
        .all(|&i| dot_q(&d.roots[i], v).is_positive()))
}

#[derive(Clone, Debug)]
pub struct CentralityWitness {
    /// Positive roots of `Cent(μ̄)`.
    pub roots: Vec<usize>,
    /// For each root, the pairings `⟨α, σ^i μ⟩` over one sigma-orbit of `μ`.
    pub summands: Vec<Vec<i64>>,
}

/// `μ` is central in `Cent(μ̄)`: each summand of `⟨α, r μ̄⟩` is nonnegative and they sum to zero.
pub fn mu_central_in_levi(ctx: &GroupContext, mu: &[i64]) -> Result<CentralityWitness> {
    let d = ctx.datum();
    let mu_bar = ctx.mu_bar(mu)?;
    let m = levi_centralizer(ctx, &mu_bar)?;
    let mut orbit = vec![mu.to_vec()];
    loop {
        let next = d.sigma_apply(orbit.last().unwrap());
        if next == mu {
            break;
        }
        orbit.push(next);
    }
    let mut summands = vec![];
    for &a in &m.positive {
        let s: Vec<i64> = orbit
            .iter()
            .map(|v| crate::lattice::dot(&d.roots[a], v))
            .collect();
        if s.iter().any(|&x| x < 0)
            || s.iter().sum::<i64>() != 0
            || crate::lattice::dot(&d.roots[a], mu) != 0
        {
            return Err(Error::Consistency(format!(
                "μ is not central in Cent(μ̄): root {:?}",
                d.roots[a]
            )));
        }
        summands.push(s);
    }
    Ok(CentralityWitness {
        roots: m.positive.clone(),
        summands,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnReport {
    pub kappa_matches: bool,
    pub positive: bool,
    pub newton_dominant: bool,
    pub kappa_b0: KottwitzPoint,
    pub kappa_lambda: KottwitzPoint,
    pub vm_image: RatCochar,
    pub m_newton: RatCochar,
}

impl HnReport {
    pub fn applicable(&self) -> bool {
        self.kappa_matches && self.positive && self.newton_dominant
    }
}

/// Checks the three hypotheses of the Hodge–Newton reduction for `(λ, M, b0)`.
pub fn hn_applicable(
    ctx: &GroupContext,
    lambda: &[i64],
    m: &LeviDatum,
    b0: &AffineElement,
) -> Result<HnReport> {
    let d = ctx.datum();
    if !d.is_dominant_int(lambda) {
        return Err(Error::Precondition(format!(
            "λ = {} is not dominant",
            fmt_int_vec(lambda)
        )));
    }
    if !m.contains_weyl(&b0.finite.action) {
        return Err(Error::Precondition(format!(
            "finite part {} of b0 is not in W_M",
            b0.finite.word_string()
        )));
    }
    let kappa_b0 = m.pi1.canonical(&b0.translation);
    let kappa_lambda = m.pi1.canonical(lambda);
    let vm_image = project_to_vm(ctx, m, &to_rat(&b0.translation))?;
    let positive = in_vm_plus(ctx, m, &vm_image)?;
    let avg = TwistedAverager::new(d, &b0.finite.action)?.average(&b0.translation);
    let m_newton = m.dominant_vector(ctx, &avg);
    let newton_dominant = d.is_dominant(&m_newton);
    Ok(HnReport {
        kappa_matches: kappa_b0 == kappa_lambda,
        positive,
        newton_dominant,
        kappa_b0,
        kappa_lambda,
        vm_image,
        m_newton,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::q;
    use crate::rootdata::{GroupSpec, SigmaSpec};

    fn ctx(f: Family, n: usize, s: SigmaSpec) -> GroupContext {
        GroupContext::new(&GroupSpec::new(f, n).with_sigma(s)).unwrap()
    }

    fn gl(n: usize) -> GroupContext {
        ctx(Family::GL, n, SigmaSpec::Identity)
    }

    #[test]
    fn newton_leq_examples() {
        let h = Q::new(1, 2);
        let t = Q::new(1, 3);
        assert!(newton_leq(&gl(2), &[h, h], &[q(1), q(0)]).unwrap());
        assert!(newton_leq(&gl(2), &[h, h], &[h, h]).unwrap());
        assert!(newton_leq(&gl(3), &[t, t, t], &[h, h, q(0)]).unwrap());
        assert!(!newton_leq(&gl(3), &[h, h, q(0)], &[t, t, t]).unwrap());
        assert_eq!(
            newton_leq(&gl(2), &[q(1), q(0)], &[q(1), q(1)]),
            Err(Error::Incomparable)
        );
    }

    #[test]
    fn enumeration_examples() {
        let b = enumerate_bgmu(&gl(2), &[1, 0]).unwrap();
        let h = Q::new(1, 2);
        let nus: Vec<RatCochar> = b.elements.iter().map(|e| e.nu.clone()).collect();
        assert_eq!(nus, vec![vec![h, h], to_rat(&[1, 0])]);
        assert_eq!(b.b_max().nu, to_rat(&[1, 0]));
        assert_eq!(b.basic().nu, vec![h, h]);
        assert!(b.oracle_checked);

        let b = enumerate_bgmu(&gl(3), &[1, 0, 0]).unwrap();
        assert_eq!(b.elements.len(), 3);
        let t = Q::new(1, 3);
        assert_eq!(b.basic().nu, vec![t, t, t]);

        let b = enumerate_bgmu(&gl(4), &[1, 1, 0, 0]).unwrap();
        assert_eq!(b.b_max().nu, to_rat(&[1, 1, 0, 0]));

        let b = enumerate_bgmu(&gl(3), &[2, 2, 2]).unwrap();
        assert_eq!(b.elements.len(), 1);
        assert_eq!(b.max_index, b.basic_index);

        let tw = ctx(Family::GL, 2, SigmaSpec::Opposition);
        let b = enumerate_bgmu(&tw, &[1, 0]).unwrap();
        assert_eq!(b.b_max().nu, vec![h, -h]);
        assert!(!b.oracle_checked);
    }

    #[test]
    fn classes_from_smaller_translations() {
        let c = gl(3);
        assert_eq!(
            dominant_below(&c, &[2, 2, 0]),
            vec![vec![2, 1, 1], vec![2, 2, 0]]
        );
        let b = enumerate_bgmu(&c, &[2, 2, 0]).unwrap();
        let nu = vec![Q::new(3, 2), Q::new(3, 2), Q::from(1)];
        assert!(b.elements.iter().any(|e| e.nu == nu));
    }

    #[test]
    fn enumeration_in_other_families() {
        for c in [
            ctx(Family::Sp, 4, SigmaSpec::Identity),
            ctx(Family::Sp, 6, SigmaSpec::Identity),
            ctx(Family::GSp, 4, SigmaSpec::Identity),
            ctx(Family::SL, 3, SigmaSpec::Opposition),
        ] {
            let d = c.datum().clone();
            let mu: Vec<i64> = match d.spec.family {
                Family::GSp => vec![1, 1, 1],
                Family::SL => d.cochar_from_matrix_coords(&[1, 0, -1]).unwrap(),
                _ => {
                    let mut v = vec![0; d.cochar_rank];
                    v[0] = 1;
                    v
                }
            };
            let b = enumerate_bgmu(&c, &mu).unwrap();
            assert_eq!(b.b_max().nu, c.mu_bar(&mu).unwrap());
        }
    }

    #[test]
    fn levi_examples() {
        let g2 = gl(2);
        assert!(levi_centralizer(&g2, &to_rat(&[1, 0])).unwrap().is_torus());
        let g3 = gl(3);
        let m = levi_centralizer(&g3, &to_rat(&[1, 1, 0])).unwrap();
        let roots: Vec<Vec<i64>> = m
            .root_subset
            .iter()
            .map(|&i| g3.datum().roots[i].clone())
            .collect();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&vec![1, -1, 0]) && roots.contains(&vec![-1, 1, 0]));
        let all = levi_centralizer(&g3, &to_rat(&[1, 1, 1])).unwrap();
        assert_eq!(all.root_subset.len(), 6);
        let tw = ctx(Family::GL, 3, SigmaSpec::Opposition);
        assert!(matches!(
            levi_centralizer(&tw, &to_rat(&[1, 0, 0])),
            Err(Error::NotSigmaStable(_))
        ));
    }

    #[test]
    fn levi_closure_and_stabilizer() {
        for c in [
            gl(4),
            ctx(Family::Sp, 6, SigmaSpec::Identity),
            ctx(Family::GL, 4, SigmaSpec::Opposition),
        ] {
            let d = c.datum();
            let vs: Vec<Vec<i64>> = match d.spec.family {
                Family::GL if !d.sigma_is_identity() => {
                    vec![vec![1, 1, -1, -1], vec![1, 0, 0, -1], vec![0, 0, 0, 0]]
                }
                Family::GL => vec![vec![2, 1, 1, 0], vec![1, 1, 0, 0], vec![3, 2, 1, 0]],
                _ => vec![vec![1, 1, 0], vec![2, 0, 0], vec![1, 0, 0]],
            };
            for v in vs {
                let m = levi_centralizer(&c, &to_rat(&v)).unwrap();
                let set: HashSet<usize> = m.root_subset.iter().copied().collect();
                for &a in &m.root_subset {
                    assert!(set.contains(&d.negate_index(a)));
                    assert!(set.contains(&d.sigma_roots[a]));
                    for &b in &m.root_subset {
                        let s: Vec<i64> = d.roots[a]
                            .iter()
                            .zip(&d.roots[b])
                            .map(|(x, y)| x + y)
                            .collect();
                        if let Some(k) = d.root_index(&s) {
                            assert!(set.contains(&k));
                        }
                    }
                }
                let stab: HashSet<IntMatrix> = c
                    .weyl
                    .elements()
                    .iter()
                    .filter(|e| e.action.apply(&v) == v)
                    .map(|e| e.action.clone())
                    .collect();
                assert_eq!(stab, m.weyl.iter().cloned().collect::<HashSet<_>>());
            }
        }
    }

    #[test]
    fn centrality_examples() {
        assert!(mu_central_in_levi(&gl(2), &[1, 0])
            .unwrap()
            .roots
            .is_empty());
        let w = mu_central_in_levi(&gl(3), &[1, 1, 0]).unwrap();
        assert_eq!(w.roots.len(), 1);
        assert_eq!(w.summands, vec![vec![0]]);
        let tw = ctx(Family::GL, 2, SigmaSpec::Opposition);
        assert!(mu_central_in_levi(&tw, &[1, 0]).unwrap().roots.is_empty());
        let tw4 = ctx(Family::GL, 4, SigmaSpec::Opposition);
        for mu in [[1, 1, 0, 0], [2, 1, 1, 0], [1, 0, 0, 0], [2, 2, 1, 1]] {
            mu_central_in_levi(&tw4, &mu).unwrap();
        }
    }

    #[test]
    fn projection_examples() {
        let c = gl(2);
        let all = levi_centralizer(&c, &to_rat(&[1, 1])).unwrap();
        let h = Q::new(1, 2);
        assert_eq!(
            project_to_vm(&c, &all, &to_rat(&[1, 0])).unwrap(),
            vec![h, h]
        );
        let t = levi_centralizer(&c, &to_rat(&[1, 0])).unwrap();
        assert_eq!(
            project_to_vm(&c, &t, &to_rat(&[1, 0])).unwrap(),
            to_rat(&[1, 0])
        );
        assert!(in_vm_plus(&c, &t, &to_rat(&[1, 0])).unwrap());
        assert!(!in_vm_plus(&c, &t, &[h, h]).unwrap());
        assert!(in_vm_plus(&c, &all, &[h, h]).unwrap());
        assert!(matches!(
            in_vm_plus(&c, &all, &to_rat(&[1, 0])),
            Err(Error::NotInVM(_))
        ));
        let tw = ctx(Family::GL, 2, SigmaSpec::Opposition);
        let tt = levi_centralizer(&tw, &[h, -h]).unwrap();
        assert_eq!(
            project_to_vm(&tw, &tt, &to_rat(&[1, 0])).unwrap(),
            vec![h, -h]
        );
    }

    #[test]
    fn hn_examples() {
        let c = gl(2);
        let t = levi_centralizer(&c, &to_rat(&[1, 0])).unwrap();
        let r = hn_applicable(
            &c,
            &[1, 0],
            &t,
            &AffineElement::translation(&c.weyl, vec![1, 0]),
        )
        .unwrap();
        assert!(r.applicable());
        let r = hn_applicable(
            &c,
            &[1, 0],
            &t,
            &AffineElement::translation(&c.weyl, vec![0, 1]),
        )
        .unwrap();
        assert!(!r.newton_dominant && !r.applicable());
        let all = levi_centralizer(&c, &to_rat(&[1, 1])).unwrap();
        let r = hn_applicable(
            &c,
            &[1, 0],
            &all,
            &AffineElement::new(&c.weyl, vec![0, 1], 1),
        )
        .unwrap();
        assert!(r.applicable());
        assert!(matches!(
            hn_applicable(
                &c,
                &[0, 1],
                &t,
                &AffineElement::translation(&c.weyl, vec![1, 0])
            ),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            hn_applicable(&c, &[1, 0], &t, &AffineElement::new(&c.weyl, vec![1, 0], 1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn hn_only_dominance_fails() {
        let c = gl(3);
        let m = levi_centralizer(&c, &to_rat(&[1, 0, 0])).unwrap();
        let r = hn_applicable(
            &c,
            &[2, 1, 1],
            &m,
            &AffineElement::translation(&c.weyl, vec![2, 3, -1]),
        )
        .unwrap();
        assert!(r.kappa_matches);
        assert!(r.positive);
        assert!(!r.newton_dominant);
        assert_eq!(r.m_newton, to_rat(&[2, 3, -1]));
    }
}
