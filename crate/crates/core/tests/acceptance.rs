//! Acceptance battery. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line.

use eostrata::affine::{AffineElement, GroupContext};
use eostrata::bgmu::{enumerate_bgmu, hn_applicable, levi_centralizer, LeviDatum};
use eostrata::eozip::EoStrata;
use eostrata::lattice::{to_rat, Q};
use eostrata::loopgrp::iwahori::random_k_chi;
use eostrata::loopgrp::{
    iwahori_factorize, newton_invariant_of_monomial, verify_double_coset_conjugacy,
    verify_hn_reduction, Experiment, LoopMatrix, LoopSpec, TruncRing,
};
use eostrata::polygon::{polygon_leq, polygons_below};
use eostrata::rootdata::{Family, GroupSpec, SigmaSpec};
use eostrata::weyl::ParabolicType;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn ctx(f: Family, rank: usize, s: SigmaSpec) -> GroupContext {
    GroupContext::new(&GroupSpec::new(f, rank).with_sigma(s)).expect("group builds")
}

/// Non-increasing vectors of length `n` with entries in `lo..=hi`.
fn dominant_vectors(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in (lo..=hi).rev() {
        for rest in dominant_vectors(n - 1, lo, first) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// (group, σ, list of μ in datum coordinates).
fn battery() -> Vec<(GroupContext, Vec<Vec<i64>>)> {
    let mut out = vec![];
    for n in 1..=5 {
        let mus = dominant_vectors(n, 0, 2);
        out.push((ctx(Family::GL, n, SigmaSpec::Identity), mus.clone()));
        if n >= 2 {
            out.push((ctx(Family::GL, n, SigmaSpec::Opposition), mus));
        }
    }
    for n in 2..=5 {
        let raw: Vec<Vec<i64>> = dominant_vectors(n, -2, 2)
            .into_iter()
            .filter(|v| v.iter().sum::<i64>() == 0)
            .collect();
        let rev: Vec<usize> = (0..n - 1).rev().collect();
        for sigma in [SigmaSpec::Identity, SigmaSpec::Perm(rev)] {
            let c = ctx(Family::SL, n, sigma);
            let mus = raw
                .iter()
                .map(|v| c.datum().cochar_from_matrix_coords(v).unwrap())
                .collect();
            out.push((c, mus));
        }
    }
    for half in 1..=5 {
        out.push((
            ctx(Family::Sp, 2 * half, SigmaSpec::Identity),
            dominant_vectors(half, 0, 2),
        ));
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 2..=5 {
        let c = ctx(Family::GL, n, SigmaSpec::Identity);
        for mu in dominant_vectors(n, 0, 2) {
            let b = enumerate_bgmu(&c, &mu).map_err(|e| format!("{mu:?}: {e}"))?;
            let oracle = polygons_below(&mu);
            let nus: Vec<Vec<Q>> = b.elements.iter().map(|e| e.nu.clone()).collect();
            let mut sorted_oracle = oracle.clone();
            sorted_oracle.sort();
            ensure!(
                nus == sorted_oracle,
                "GL_{n} μ={mu:?}: enumeration differs from the polygon set"
            );
            let total: i64 = mu.iter().sum();
            for e in &b.elements {
                ensure!(
                    e.kappa.value == vec![total],
                    "GL_{n} μ={mu:?}: κ = {} expected {total}",
                    e.kappa
                );
            }
            for (i, a) in nus.iter().enumerate() {
                for (j, bb) in nus.iter().enumerate() {
                    ensure!(
                        b.poset.leq(i, j) == polygon_leq(a, bb),
                        "GL_{n} μ={mu:?}: order differs at ({i}, {j})"
                    );
                }
            }
            cases += 1;
        }
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(60), "took {t:?}");
    Ok(format!("{cases} cases in {:.2?}", t))
}

fn criterion_2_and_3() -> (Outcome, Outcome) {
    let mut cases = 0;
    let mut checked_3 = 0;
    let mut err2 = None;
    let mut err3 = None;
    for (c, mus) in battery() {
        let d = c.datum();
        let name = d.spec.name();
        for mu in mus {
            let b = match enumerate_bgmu(&c, &mu) {
                Ok(b) => b,
                Err(e) => {
                    err2.get_or_insert(format!("{name} μ={mu:?}: {e}"));
                    continue;
                }
            };
            let mu_bar = c.mu_bar(&mu).unwrap();
            let max = b.poset.maximal();
            let min = b.poset.minimal();
            let central: Vec<usize> = (0..b.elements.len())
                .filter(|&i| d.is_central(&b.elements[i].nu))
                .collect();
            if max.len() != 1 || b.elements[max[0]].nu != mu_bar {
                err2.get_or_insert(format!("{name} μ={mu:?}: maximal elements {max:?}"));
            }
            if min.len() != 1 || central != min {
                err2.get_or_insert(format!(
                    "{name} μ={mu:?}: minimal {min:?}, basic {central:?}"
                ));
            }
            cases += 1;
            let strata = match EoStrata::new(&c, &mu) {
                Ok(s) => s,
                Err(e) => {
                    err3.get_or_insert(format!("{name} μ={mu:?}: {e}"));
                    continue;
                }
            };
            let w_max = strata.parabolic.w_max(&c.weyl);
            match strata.to_newton(&c, &b, w_max) {
                Ok(class) if max.len() == 1 && class == b.elements[max[0]] => checked_3 += 1,
                Ok(class) => {
                    err3.get_or_insert(format!(
                        "{name} μ={mu:?}: w_max maps to ν = {:?}",
                        class.nu
                    ));
                }
                Err(e) => {
                    err3.get_or_insert(format!("{name} μ={mu:?}: {e}"));
                }
            }
        }
    }
    (
        err2.map_or(Ok(format!("{cases} (group, σ, μ) cases")), Err),
        err3.map_or(Ok(format!("{checked_3} cases")), Err),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let groups = vec![
        ctx(Family::GL, 2, SigmaSpec::Identity),
        ctx(Family::GL, 3, SigmaSpec::Identity),
        ctx(Family::GL, 3, SigmaSpec::Opposition),
        ctx(Family::GL, 4, SigmaSpec::Identity),
        ctx(Family::GL, 4, SigmaSpec::Opposition),
        ctx(Family::GL, 5, SigmaSpec::Identity),
        ctx(Family::GL, 5, SigmaSpec::Opposition),
        ctx(Family::SL, 4, SigmaSpec::Perm(vec![2, 1, 0])),
        ctx(Family::Sp, 4, SigmaSpec::Identity),
        ctx(Family::Sp, 6, SigmaSpec::Identity),
        ctx(Family::Sp, 8, SigmaSpec::Identity),
        ctx(Family::GSp, 4, SigmaSpec::Identity),
    ];
    let mut count = 0;
    for c in &groups {
        let g = &c.weyl;
        let r = g.rank();
        let name = c.datum().spec.name();
        for mask in 0u32..(1 << r) {
            let j = ParabolicType::new((0..r).filter(|s| mask & (1 << s) != 0));
            let p = g.parabolic(&j);
            let poset = p
                .eo_poset(g)
                .map_err(|e| format!("{name} J={}: {e}", j.label()))?;
            poset
                .validate()
                .map_err(|e| format!("{name} J={}: {e}", j.label()))?;
            ensure!(
                p.reps.len() * p.subgroup.len() == g.order(),
                "{name} J={}: coset count",
                j.label()
            );
            let w_max = p.w_max(g);
            let max = poset.maximal();
            let min = poset.minimal();
            ensure!(
                max.len() == 1 && p.reps[max[0]] == w_max,
                "{name} J={}: maximum",
                j.label()
            );
            ensure!(
                min.len() == 1 && p.reps[min[0]] == g.identity(),
                "{name} J={}: minimum",
                j.label()
            );
            ensure!(
                g.length(w_max) == g.length(g.longest()) - g.length(p.w0_j),
                "{name} J={}: length of w_max",
                j.label()
            );
            for (a, &x) in p.reps.iter().enumerate() {
                for (b, &y) in p.reps.iter().enumerate() {
                    if g.bruhat_leq(x, y) {
                        ensure!(
                            poset.leq(a, b),
                            "{name} J={}: Bruhat does not imply the EO order",
                            j.label()
                        );
                    }
                }
            }
            count += 1;
        }
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(120), "took {t:?}");
    Ok(format!("{count} (group, J) pairs in {:.2?}", t))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for n in [2usize, 3] {
        let c = ctx(Family::GL, n, SigmaSpec::Identity);
        let g = &c.weyl;
        let mut mus = vec![];
        let mut a = vec![0; n];
        a[0] = 1;
        mus.push(a.clone());
        a[1] = 1;
        mus.push(a);
        for mu in mus {
            for lambda in g.orbit(&mu) {
                for w in 0..g.order() {
                    let el = AffineElement::new(g, lambda.clone(), w);
                    let nu = c.newton_point(&el).map_err(|e| e.to_string())?;
                    let m = &g.element(w).action;
                    let perm: Vec<usize> = (0..n)
                        .map(|i| (0..n).find(|&r| m.get(r, i) == 1).unwrap())
                        .collect();
                    let loop_nu = newton_invariant_of_monomial(2, &lambda, &perm)
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        nu == loop_nu,
                        "λ={lambda:?} w={}: {nu:?} vs {loop_nu:?}",
                        g.element(w).word_string()
                    );
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} monomials agree"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut spec = LoopSpec::new(&[1, 0], 2, 2);
    spec.exhaustive = true;
    spec.m_schedule = vec![1, 2];
    let r = verify_double_coset_conjugacy(&spec, Experiment::K1).map_err(|e| e.to_string())?;
    ensure!(
        r.hard_failures == 0 && r.unresolved == 0,
        "{} hard failures, {} unresolved",
        r.hard_failures,
        r.unresolved
    );
    ensure!(r.found == r.samples, "found {} of {}", r.found, r.samples);
    let b = verify_double_coset_conjugacy(&spec, Experiment::Iwahori).map_err(|e| e.to_string())?;
    ensure!(
        b.hard_failures == 0,
        "Iwahori: {} hard failures",
        b.hard_failures
    );
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(600), "took {t:?}");
    Ok(format!(
        "{} distinct elements of K1 mu K1 all conjugated (Iwahori: {} of {}) in {:.2?}",
        r.samples, b.found, b.samples, t
    ))
}

fn criterion_7() -> Outcome {
    let mut spec = LoopSpec::new(&[1, 0, 0], 2, 3);
    spec.samples = 200;
    spec.seed = 20240607;
    let mut parts = vec![];
    for ex in [Experiment::K1, Experiment::Iwahori] {
        let r = verify_double_coset_conjugacy(&spec, ex).map_err(|e| e.to_string())?;
        ensure!(r.samples >= 200, "{ex:?}: only {} samples", r.samples);
        ensure!(
            r.hard_failures == 0,
            "{ex:?}: {} hard failures",
            r.hard_failures
        );
        let rate = r.unresolved_rate();
        ensure!(rate < 0.05, "{ex:?}: UNRESOLVED rate {:.1}%", 100.0 * rate);
        parts.push(format!(
            "{ex:?} found {}/{} unresolved {:.1}%",
            r.found,
            r.samples,
            100.0 * rate
        ));
    }
    Ok(parts.join("; "))
}

fn block_of(chi: &[i64], i: usize) -> usize {
    // Blocks are runs of equal entries; their index is the number of strict drops before i.
    (1..=i).filter(|&k| chi[k] != chi[k - 1]).count()
}

fn criterion_8() -> Outcome {
    let r = TruncRing::new(2, 1, 2, 3).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut count = 0;
    for (chi, samples) in [
        (vec![1i64, 0], 5000),
        (vec![1, 0, 0], 2500),
        (vec![2, 1, 0], 2500),
    ] {
        let n = chi.len();
        for _ in 0..samples {
            let c = random_k_chi(&r, &chi, &mut rng);
            let f = iwahori_factorize(&r, &c, &chi).map_err(|e| e.to_string())?;
            ensure!(
                r.mat_mul(&r.mat_mul(&f.lower, &f.upper), &f.levi) == c,
                "product differs"
            );
            let entry = |m: &LoopMatrix, i: usize, j: usize| m.get(i, j).clone();
            for i in 0..n {
                for j in 0..n {
                    let (bi, bj) = (block_of(&chi, i), block_of(&chi, j));
                    let delta = if i == j { r.one() } else { r.zero() };
                    if bi == bj {
                        ensure!(
                            entry(&f.lower, i, j) == delta && entry(&f.upper, i, j) == delta,
                            "unipotent diagonal block"
                        );
                    }
                    if bi < bj {
                        ensure!(
                            r.is_zero(&entry(&f.lower, i, j)) && r.is_zero(&entry(&f.levi, i, j)),
                            "above-block entries"
                        );
                    }
                    if bi > bj {
                        ensure!(
                            r.is_zero(&entry(&f.upper, i, j)) && r.is_zero(&entry(&f.levi, i, j)),
                            "below-block entries"
                        );
                        let need = (chi[j] - chi[i]) as usize;
                        ensure!(
                            r.val(&entry(&f.lower, i, j)) >= need,
                            "lower factor leaves K_chi"
                        );
                    }
                }
            }
            ensure!(r.in_k(&f.levi) && r.in_k(&f.upper), "factor not in K");
            count += 1;
        }
    }
    Ok(format!("{count} factorizations"))
}

fn criterion_9() -> Outcome {
    let gl2 = ctx(Family::GL, 2, SigmaSpec::Identity);
    let torus = LeviDatum::from_roots(&gl2, vec![]);
    let b0 = AffineElement::translation(&gl2.weyl, vec![1, 0]);
    let r = hn_applicable(&gl2, &[1, 0], &torus, &b0).map_err(|e| e.to_string())?;
    ensure!(r.applicable(), "GL_2 torus case rejected: {r:?}");
    let gl3 = ctx(Family::GL, 3, SigmaSpec::Identity);
    let mut regular = 0;
    for lambda in [vec![2, 1, 0], vec![3, 1, 0], vec![1, 0, -1], vec![4, 2, 1]] {
        let m = levi_centralizer(&gl3, &to_rat(&lambda)).map_err(|e| e.to_string())?;
        ensure!(m.is_torus(), "{lambda:?} should be regular");
        let b0 = AffineElement::translation(&gl3.weyl, lambda.clone());
        let r = hn_applicable(&gl3, &lambda, &m, &b0).map_err(|e| e.to_string())?;
        ensure!(r.applicable(), "GL_3 λ={lambda:?} rejected: {r:?}");
        regular += 1;
    }
    // Only the dominance of the M-Newton point fails here.
    let m = levi_centralizer(&gl3, &to_rat(&[1, 0, 0])).map_err(|e| e.to_string())?;
    let b0 = AffineElement::translation(&gl3.weyl, vec![2, 3, -1]);
    let r = hn_applicable(&gl3, &[2, 1, 1], &m, &b0).map_err(|e| e.to_string())?;
    ensure!(
        r.kappa_matches && r.positive && !r.newton_dominant && !r.applicable(),
        "fixture: {r:?}"
    );
    Ok(format!(
        "GL_2 torus case and {regular} regular GL_3 cases accepted; dominance fixture rejected"
    ))
}

fn criterion_10() -> Outcome {
    let mut spec = LoopSpec::new(&[1, 0], 2, 3);
    spec.samples = 100;
    spec.seed = 10;
    let rep = verify_hn_reduction(&spec).map_err(|e| e.to_string())?;
    ensure!(
        rep.samples == 100 && rep.hard_failures == 0,
        "{} hard failures",
        rep.hard_failures
    );
    let small = TruncRing::new(2, 1, 2, spec.prec).unwrap();
    for w in &rep.witnesses {
        let m = w.m.ok_or("missing degree")?;
        let big = TruncRing::new(2, 1, m, spec.prec).unwrap();
        let g = small.mat_embed(&small, &from_nested(&w.g)).unwrap();
        let g = big.mat_embed(&small, &g).unwrap();
        let k = from_nested(w.witness.as_ref().ok_or("missing witness")?);
        let mu = big.monomial_matrix(&[1, 0], &[0, 1]).unwrap();
        ensure!(big.in_k(&k), "sample {}: witness not in K", w.index);
        let sk_inv = big
            .mat_inv(&big.mat_sigma(&k))
            .ok_or("σ(k) not invertible")?;
        ensure!(
            big.mat_mul(&big.mat_mul(&k, &g), &sk_inv) == mu,
            "sample {}: k g σ(k)^-1 ≠ μ",
            w.index
        );
    }
    Ok(format!("{} proof chains re-verified", rep.samples))
}

fn from_nested(v: &[Vec<Vec<u32>>]) -> LoopMatrix {
    LoopMatrix {
        n: v.len(),
        entries: v.iter().flatten().cloned().collect(),
    }
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default())
    });
    report(label, result)
}

fn report(label: &str, result: Outcome) -> bool {
    match result {
        Ok(msg) => {
            println!("{label}: PASS ({msg})");
            true
        }
        Err(msg) => {
            println!("{label}: FAIL ({msg})");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    ok &= run(
        "criterion 1  B(G,mu) equals the Newton polygon oracle",
        criterion_1,
    );
    let (c2, c3) = catch_unwind(criterion_2_and_3)
        .unwrap_or_else(|_| (Err("panic".into()), Err("panic".into())));
    ok &= report("criterion 2  unique maximum and unique basic minimum", c2);
    ok &= report("criterion 3  w_max maps to the mu-ordinary class", c3);
    ok &= run("criterion 4  EO poset laws for every J", criterion_4);
    ok &= run(
        "criterion 5  Newton points agree with the loop group",
        criterion_5,
    );
    ok &= run(
        "criterion 6  exhaustive K1 mu K1 conjugacy on GL_2",
        criterion_6,
    );
    ok &= run(
        "criterion 7  sampled K1 and Iwahori conjugacy on GL_3",
        criterion_7,
    );
    ok &= run("criterion 8  Iwahori factorization round trip", criterion_8);
    ok &= run(
        "criterion 9  Hodge-Newton applicability fixtures",
        criterion_9,
    );
    ok &= run(
        "criterion 10 Hodge-Newton reduction witnesses",
        criterion_10,
    );
    if !ok {
        std::process::exit(1);
    }
}
