//! Experiments: σ-conjugacy of `K₁μK₁` and `IμI` to `μ`, consistency of
//! constructed samples, and the torus step of the Hodge–Newton reduction.

use super::ring::{LoopMatrix, TruncRing};
use super::search::{
    find_conjugator, solve_torus_lang, verify_witness, Attempt, SearchKind, SearchOutcome,
    SearchPolicy,
};
use crate::affine::{AffineElement, GroupContext};
use crate::bgmu::{hn_applicable, LeviDatum};
use crate::error::{Error, Result};
use crate::field::{split_prime_power, GaloisField, MAX_DEGREE};
use crate::lattice::Q;
use crate::rootdata::{Family, GroupSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Parameters shared by the loop-group experiments.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LoopSpec {
    pub n: usize,
    pub mu: Vec<i64>,
    pub q: u32,
    pub m_schedule: Vec<u32>,
    #[serde(rename = "N")]
    pub prec: usize,
    pub samples: usize,
    pub seed: u64,
    pub exhaustive: bool,
}

impl LoopSpec {
    pub fn new(mu: &[i64], q: u32, prec: usize) -> LoopSpec {
        let e = split_prime_power(q).map_or(1, |(_, e)| e);
        LoopSpec {
            n: mu.len(),
            mu: mu.to_vec(),
            q,
            m_schedule: (1..=MAX_DEGREE / e).collect(),
            prec,
            samples: 200,
            seed: 0,
            exhaustive: false,
        }
    }

    pub fn validate(&self) -> Result<(u32, u32)> {
        let (p, e) = split_prime_power(self.q)?;
        if self.mu.len() != self.n || self.n == 0 {
            return Err(Error::Dimension {
                expected: self.n,
                got: self.mu.len(),
            });
        }
        if self.mu.iter().any(|&x| x < 0) {
            return Err(Error::Precondition(
                "μ must have non-negative entries".into(),
            ));
        }
        if self.mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(format!("{:?}", self.mu)));
        }
        if self.m_schedule.is_empty() {
            return Err(Error::InvalidSpec("empty m-schedule".into()));
        }
        if let Some(&m) = self
            .m_schedule
            .iter()
            .find(|&&m| m == 0 || e * m > MAX_DEGREE)
        {
            return Err(Error::UnsupportedField(format!(
                "degree {m} over F_{} is outside the field tables",
                self.q
            )));
        }
        let top = *self.mu.iter().max().unwrap_or(&0) as usize;
        if top >= self.prec {
            return Err(Error::InsufficientPrecision(format!(
                "max μ = {top} needs N > {top}, got N = {}",
                self.prec
            )));
        }
        Ok((p, e))
    }

    fn policy(&self) -> SearchPolicy {
        SearchPolicy {
            m_schedule: self.m_schedule.clone(),
            exhaustive_limit: if self.exhaustive { 1 << 22 } else { 1 << 12 },
            random_tries: 256,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Experiment {
    /// `g ∈ K₁μK₁`, search `h ∈ K`.
    #[serde(rename = "A")]
    K1,
    /// `g ∈ IμI`, search `h ∈ I`.
    #[serde(rename = "B")]
    Iwahori,
    /// `g = h₀ μ σ(h₀)^{-1}`; check the Cartan and Newton invariants.
    #[serde(rename = "C")]
    Constructed,
    /// Torus step of the Hodge–Newton reduction.
    #[serde(rename = "HN")]
    HnReduction,
}

impl std::str::FromStr for Experiment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" | "K1" => Ok(Experiment::K1),
            "B" | "IWAHORI" => Ok(Experiment::Iwahori),
            "C" | "CONSTRUCTED" => Ok(Experiment::Constructed),
            "HN" => Ok(Experiment::HnReduction),
            _ => Err(Error::InvalidSpec(format!(
                "unknown experiment `{s}` (expected A, B, C or HN)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleStatus {
    Found,
    Unresolved,
    HardFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub status: SampleStatus,
    /// Entries as coefficient lists; coefficients are field elements in base-`p` digit encoding.
    pub g: Vec<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub attempts: Vec<Attempt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: Experiment,
    pub params: LoopSpec,
    pub seed: u64,
    pub samples: usize,
    pub found: usize,
    pub unresolved: usize,
    pub hard_failures: usize,
    pub witnesses: Vec<SampleRecord>,
}

impl ExperimentReport {
    fn from_records(
        experiment: Experiment,
        params: &LoopSpec,
        mut records: Vec<SampleRecord>,
    ) -> ExperimentReport {
        records.sort_by_key(|r| r.index);
        let count = |s| records.iter().filter(|r| r.status == s).count();
        ExperimentReport {
            experiment,
            params: params.clone(),
            seed: params.seed,
            samples: records.len(),
            found: count(SampleStatus::Found),
            unresolved: count(SampleStatus::Unresolved),
            hard_failures: count(SampleStatus::HardFailure),
            witnesses: records,
        }
    }

    pub fn unresolved_rate(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.unresolved as f64 / self.samples as f64
        }
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn mu_matrix(r: &TruncRing, mu: &[i64]) -> Result<LoopMatrix> {
    let id: Vec<usize> = (0..mu.len()).collect();
    r.monomial_matrix(mu, &id)
}

/// All elements of `K₁` (or the Iwahori) over `F_q` modulo `t^N`.
fn enumerate_group(r: &TruncRing, n: usize, kind: SearchKind) -> Result<Vec<LoopMatrix>> {
    let base = GaloisField::get(r.p(), r.e)?;
    let scalars: Vec<u32> = (0..base.size)
        .map(|x| r.field.embed(&base, x))
        .collect::<Result<_>>()?;
    // Each free coefficient position with its allowed values.
    let mut positions: Vec<(usize, usize, Vec<u32>)> = vec![];
    for i in 0..n {
        for j in 0..n {
            let idx = i * n + j;
            for level in 0..r.prec {
                let allowed: Vec<u32> = match (kind, level) {
                    (_, l) if l > 0 => scalars.clone(),
                    (SearchKind::K, _) => continue,
                    (SearchKind::Iwahori, _) if i < j => scalars.clone(),
                    (SearchKind::Iwahori, _) if i == j => {
                        scalars.iter().copied().filter(|&x| x != 0).collect()
                    }
                    (SearchKind::Iwahori, _) => continue,
                };
                positions.push((idx, level, allowed));
            }
        }
    }
    let total: f64 = positions.iter().map(|p| p.2.len() as f64).product();
    if total > 1e5 {
        return Err(Error::Precondition(format!(
            "{total} group elements are too many to enumerate"
        )));
    }
    let mut out = vec![];
    let mut choice = vec![0usize; positions.len()];
    loop {
        let mut g = LoopMatrix::identity(r, n);
        for (k, (idx, level, allowed)) in positions.iter().enumerate() {
            g.entries[*idx][*level] = allowed[choice[k]];
        }
        out.push(g);
        let mut pos = 0;
        while pos < positions.len() && choice[pos] + 1 == positions[pos].2.len() {
            choice[pos] = 0;
            pos += 1;
        }
        if pos == positions.len() {
            break;
        }
        choice[pos] += 1;
    }
    Ok(out)
}

/// Runs experiment A, B or C.
pub fn verify_double_coset_conjugacy(
    spec: &LoopSpec,
    experiment: Experiment,
) -> Result<ExperimentReport> {
    let (p, e) = spec.validate()?;
    let base = TruncRing::new(p, e, 1, spec.prec)?;
    let mu = mu_matrix(&base, &spec.mu)?;
    let kind = match experiment {
        Experiment::K1 => SearchKind::K,
        Experiment::Iwahori => SearchKind::Iwahori,
        Experiment::Constructed => return constructed(spec, &base, &mu),
        Experiment::HnReduction => return verify_hn_reduction(spec),
    };
    let samples: Vec<(usize, LoopMatrix)> = if spec.exhaustive {
        let group = enumerate_group(&base, spec.n, kind)?;
        if (group.len() as f64).powi(2) > 4e6 {
            return Err(Error::Precondition(format!(
                "{} double cosets products are too many",
                group.len().pow(2)
            )));
        }
        let mut set = BTreeSet::new();
        for a in &group {
            let am = base.mat_mul(a, &mu);
            for b in &group {
                set.insert(base.mat_mul(&am, b));
            }
        }
        set.into_iter().enumerate().collect()
    } else {
        (0..spec.samples)
            .map(|i| {
                let mut rng = sample_rng(spec.seed, i);
                let draw = |rng: &mut ChaCha8Rng| match kind {
                    SearchKind::K => base.random_base_k1(spec.n, rng),
                    SearchKind::Iwahori => base.random_base_iwahori(spec.n, rng),
                };
                let a = draw(&mut rng)?;
                let b = draw(&mut rng)?;
                Ok((i, base.mat_mul(&base.mat_mul(&a, &mu), &b)))
            })
            .collect::<Result<_>>()?
    };
    let policy = spec.policy();
    let records: Vec<SampleRecord> = samples
        .into_par_iter()
        .map(|(i, g)| {
            let mut rng = sample_rng(spec.seed.wrapping_add(1), i);
            let mut rec = SampleRecord {
                index: i,
                status: SampleStatus::Unresolved,
                g: g.to_nested(),
                witness: None,
                m: None,
                attempts: vec![],
                detail: None,
            };
            match find_conjugator(&base, &g, &mu, kind, &policy, &mut rng) {
                Ok(res) => {
                    rec.attempts = res.attempts;
                    match res.outcome {
                        SearchOutcome::Found { m, h, .. } => {
                            rec.status = SampleStatus::Found;
                            rec.m = Some(m);
                            rec.witness = Some(h.to_nested());
                        }
                        SearchOutcome::ProvenNone if spec.exhaustive => {
                            rec.status = SampleStatus::HardFailure;
                            rec.detail = Some("no conjugator at any degree in the schedule".into());
                        }
                        _ => {}
                    }
                }
                Err(err) => {
                    rec.status = SampleStatus::HardFailure;
                    rec.detail = Some(err.to_string());
                }
            }
            rec
        })
        .collect();
    Ok(ExperimentReport::from_records(experiment, spec, records))
}

fn constructed(spec: &LoopSpec, base: &TruncRing, mu: &LoopMatrix) -> Result<ExperimentReport> {
    let m = if base.e * 2 <= MAX_DEGREE { 2 } else { 1 };
    let r = base.with_degree(m)?;
    let mu_r = r.mat_embed(base, mu)?;
    let top = *spec.mu.iter().max().unwrap_or(&0) as usize;
    let steps = if top == 0 {
        1
    } else {
        ((spec.prec - 1) / top).max(1)
    };
    let mut sorted = spec.mu.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let expected_newton: Vec<Q> = sorted.iter().map(|&x| Q::from_integer(x)).collect();
    let records: Vec<SampleRecord> = (0..spec.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(spec.seed, i);
            let h0 = r.random_k(spec.n, &mut rng);
            let mut rec = SampleRecord {
                index: i,
                status: SampleStatus::Found,
                g: vec![],
                witness: Some(h0.to_nested()),
                m: Some(m),
                attempts: vec![],
                detail: None,
            };
            let check = || -> Result<LoopMatrix> {
                let hinv = r
                    .mat_inv(&h0)
                    .ok_or_else(|| Error::Consistency("sampled h₀ not in K".into()))?;
                // h₀^{-1} · (h₀ μ σ(h₀)^{-1}) · σ(h₀) recovers μ, and h₀ itself witnesses conjugacy.
                let g = r.mat_mul(&r.mat_mul(&hinv, &mu_r), &r.mat_sigma(&h0));
                verify_witness(&r, &h0, &g, &mu_r, SearchKind::K)?;
                let cartan = r.cartan_invariant(&g)?;
                if cartan != sorted {
                    return Err(Error::Consistency(format!(
                        "Cartan invariant {cartan:?}, expected {sorted:?}"
                    )));
                }
                let newton = r.newton_invariant(&g, steps)?;
                if newton != expected_newton {
                    return Err(Error::Consistency("Newton invariant differs from μ̄".into()));
                }
                Ok(g)
            };
            match check() {
                Ok(g) => rec.g = g.to_nested(),
                Err(err) => {
                    rec.status = SampleStatus::HardFailure;
                    rec.detail = Some(err.to_string());
                }
            }
            rec
        })
        .collect();
    Ok(ExperimentReport::from_records(
        Experiment::Constructed,
        spec,
        records,
    ))
}

/// Newton point of `t^λ w` read off from the loop group over `F_q`.
pub fn newton_invariant_of_monomial(q: u32, lambda: &[i64], perm: &[usize]) -> Result<Vec<Q>> {
    let (p, e) = split_prime_power(q)?;
    let n = lambda.len();
    let mut order = 1;
    let mut cur: Vec<usize> = perm.to_vec();
    while cur.iter().enumerate().any(|(i, &x)| x != i) {
        cur = cur.iter().map(|&x| perm[x]).collect();
        order += 1;
        if order > 10_000 {
            return Err(Error::Precondition("permutation order too large".into()));
        }
    }
    let top = lambda.iter().copied().max().unwrap_or(0).max(0) as usize;
    let r = TruncRing::new(p, e, 1, order * top + 1)?;
    let b = r.monomial_matrix(lambda, perm)?;
    debug_assert_eq!(b.n, n);
    r.newton_invariant(&b, order)
}

/// Samples `h = m·c` with `m` in the diagonal torus over `L` and `c ∈ K`, forms
/// `g = h^{-1} μ σ(h)`, and rebuilds `k ∈ K` with `g = k^{-1} μ σ(k)` by the
/// torus Lang step. Every link is checked by direct multiplication.
pub fn verify_hn_reduction(spec: &LoopSpec) -> Result<ExperimentReport> {
    let (p, e) = spec.validate()?;
    let n = spec.n;
    let ctx = GroupContext::new(&GroupSpec::new(Family::GL, n))?;
    let torus = LeviDatum::from_roots(&ctx, vec![]);
    let b0 = AffineElement::translation(&ctx.weyl, spec.mu.clone());
    let report = hn_applicable(&ctx, &spec.mu, &torus, &b0)?;
    if !report.applicable() {
        return Err(Error::Precondition(
            "the Hodge–Newton hypotheses fail for (μ, T, t^μ)".into(),
        ));
    }
    let m0 = if e * 2 <= MAX_DEGREE { 2 } else { 1 };
    let max_shift = 2usize;
    let wide = TruncRing::new(p, e, m0, spec.prec + max_shift)?;
    let narrow = wide.with_prec(spec.prec)?;
    let m_cap = *spec.m_schedule.iter().max().unwrap_or(&m0);
    let records: Vec<SampleRecord> = (0..spec.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(spec.seed, i);
            let mut rec = SampleRecord {
                index: i,
                status: SampleStatus::Found,
                g: vec![],
                witness: None,
                m: None,
                attempts: vec![],
                detail: None,
            };
            match hn_sample(&wide, &narrow, &spec.mu, m_cap, &mut rng) {
                Ok((g, k, m)) => {
                    rec.g = g.to_nested();
                    rec.witness = Some(k.to_nested());
                    rec.m = Some(m);
                }
                Err(err) => {
                    rec.status = SampleStatus::HardFailure;
                    rec.detail = Some(err.to_string());
                }
            }
            rec
        })
        .collect();
    Ok(ExperimentReport::from_records(
        Experiment::HnReduction,
        spec,
        records,
    ))
}

fn truncate(from: &TruncRing, to: &TruncRing, a: &LoopMatrix) -> Result<LoopMatrix> {
    to.mat_embed(from, a)
}

fn hn_sample(
    wide: &TruncRing,
    narrow: &TruncRing,
    mu: &[i64],
    m_cap: u32,
    rng: &mut ChaCha8Rng,
) -> Result<(LoopMatrix, LoopMatrix, u32)> {
    let n = mu.len();
    // h = diag(t^{v_i} u_i) · c.
    let shifts: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let units: Vec<_> = (0..n).map(|_| wide.random_unit(rng)).collect();
    let c = wide.random_k(n, rng);
    let torus: Vec<_> = shifts
        .iter()
        .zip(&units)
        .map(|(&v, u)| wide.shift_up(u, v))
        .collect();
    let h = wide.mat_mul(&wide.diagonal(&torus), &c);

    // Recover a torus part from h alone: row valuation and leading unit.
    let mut m_hat = vec![];
    let mut c_hat = LoopMatrix::zeros(wide, n);
    for i in 0..n {
        let v = (0..n)
            .map(|j| wide.val(h.get(i, j)))
            .min()
            .unwrap_or(wide.prec);
        let lead = (0..n)
            .find(|&j| wide.val(h.get(i, j)) == v)
            .expect("row has an entry");
        let unit = wide.shift_down(h.get(i, lead), v);
        let unit_inv = wide
            .inv(&unit)
            .ok_or_else(|| Error::Consistency("leading coefficient not a unit".into()))?;
        for j in 0..n {
            c_hat.set(i, j, wide.mul(&unit_inv, &wide.shift_down(h.get(i, j), v)));
        }
        m_hat.push((v, unit));
    }
    // Entries of c_hat are exact modulo t^N.
    let c_hat = truncate(wide, narrow, &c_hat)?;
    if !narrow.in_k(&c_hat) {
        return Err(Error::Consistency("recovered c is not in K".into()));
    }
    let units_hat: Vec<_> = m_hat
        .iter()
        .map(|(_, u)| narrow.embed(wide, u))
        .collect::<Result<_>>()?;
    let mu_n = mu_matrix(narrow, mu)?;

    // g = c^{-1} · m^{-1} μ σ(m) · σ(c), where m^{-1} μ σ(m) = μ · diag(u^{-1} σ(u)).
    let twist: Vec<_> = units_hat
        .iter()
        .map(|u| {
            Ok(narrow.mul(
                &narrow
                    .inv(u)
                    .ok_or_else(|| Error::Consistency("unit".into()))?,
                &narrow.sigma(u),
            ))
        })
        .collect::<Result<_>>()?;
    let twist = narrow.diagonal(&twist);
    let c_inv = narrow
        .mat_inv(&c_hat)
        .ok_or_else(|| Error::Consistency("c not invertible".into()))?;
    let g = narrow.mat_mul(
        &narrow.mat_mul(&c_inv, &narrow.mat_mul(&mu_n, &twist)),
        &narrow.mat_sigma(&c_hat),
    );

    // g must satisfy h g = μ σ(h) for the original h.
    let h_n = truncate(wide, narrow, &h)?;
    if narrow.mat_mul(&h_n, &g) != narrow.mat_mul(&mu_n, &narrow.mat_sigma(&h_n)) {
        return Err(Error::Consistency("h g ≠ μ σ(h)".into()));
    }
    if narrow.cartan_invariant(&g)? != {
        let mut s = mu.to_vec();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    } {
        return Err(Error::Consistency("g is not in KμK".into()));
    }

    // Torus Lang: m'^{-1} σ(m') = twist with m' ∈ T(O).
    let (big, m_prime) = solve_torus_lang(narrow, &twist, m_cap)?;
    let c_big = big.mat_embed(narrow, &c_hat)?;
    let g_big = big.mat_embed(narrow, &g)?;
    let mu_big = big.mat_embed(narrow, &mu_n)?;
    let k = big.mat_mul(&m_prime, &c_big);
    verify_witness(&big, &k, &g_big, &mu_big, SearchKind::K)?;
    Ok((g, k, big.m()))
}
