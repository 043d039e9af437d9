//! Rendering of command results as JSON, DOT or plain text.
//!
//! Shared by the command-line tool and the C API so both emit the same bytes.

use crate::affine::AffineElement;
use crate::bgmu::{enumerate_bgmu, hn_applicable, levi_centralizer, LeviDatum};
use crate::eozip::{eo_to_newton_table, EoStrata};
use crate::error::{Error, Result};
use crate::lattice::{fmt_int_vec, fmt_rat, fmt_rat_vec, to_rat, Q};
use crate::loopgrp::{verify_double_coset_conjugacy, Experiment, ExperimentReport, LoopSpec};
use crate::rootdata::{Family, SigmaSpec};
use crate::specfile::{LeviChoice, Loaded};
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Describe,
    Bgmu,
    EoPoset,
    EoToNewton,
    HnCheck,
    VerifyLoop,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Describe => "describe",
            Command::Bgmu => "bgmu",
            Command::EoPoset => "eoposet",
            Command::EoToNewton => "eo2newton",
            Command::HnCheck => "hncheck",
            Command::VerifyLoop => "verify-loop",
        }
    }

    pub fn supports(self, format: Format) -> bool {
        format != Format::Dot || matches!(self, Command::Bgmu | Command::EoPoset)
    }
}

impl std::str::FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Command::Describe,
            Command::Bgmu,
            Command::EoPoset,
            Command::EoToNewton,
            Command::HnCheck,
            Command::VerifyLoop,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::InvalidSpec(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidSpec(format!(
                "unknown format `{s}` (expected json, dot or text)"
            ))),
        }
    }
}

/// Loop-experiment options beyond the group spec.
#[derive(Clone, Debug)]
pub struct LoopOptions {
    pub experiment: Experiment,
    pub q: u32,
    pub m_schedule: Option<Vec<u32>>,
    pub prec: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub exhaustive: bool,
}

impl Default for LoopOptions {
    fn default() -> Self {
        LoopOptions {
            experiment: Experiment::K1,
            q: 2,
            m_schedule: None,
            prec: None,
            samples: 200,
            seed: 0,
            exhaustive: false,
        }
    }
}

pub struct Rendered {
    pub body: String,
    pub hard_failures: usize,
}

fn rats(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn sigma_label(s: &SigmaSpec) -> String {
    match s {
        SigmaSpec::Identity => "identity".into(),
        SigmaSpec::Opposition => "opposition".into(),
        SigmaSpec::Perm(p) => format!(
            "perm:{}",
            p.iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    }
}

fn affine_json(e: &AffineElement) -> serde_json::Value {
    json!({"translation": e.translation, "finite": e.finite.word_string()})
}

pub fn render(
    cmd: Command,
    loaded: &Loaded,
    format: Format,
    opts: &LoopOptions,
) -> Result<Rendered> {
    if !cmd.supports(format) {
        return Err(Error::InvalidSpec(format!(
            "{} has no {format:?} output",
            cmd.name()
        )));
    }
    let body = match cmd {
        Command::Describe => describe(loaded, format)?,
        Command::Bgmu => bgmu(loaded, format)?,
        Command::EoPoset => eoposet(loaded, format)?,
        Command::EoToNewton => eo2newton(loaded, format)?,
        Command::HnCheck => hncheck(loaded, format)?,
        Command::VerifyLoop => {
            let report = verify_loop(loaded, opts)?;
            let body = match format {
                Format::Json => pretty(&report),
                _ => loop_summary(&report),
            };
            return Ok(Rendered {
                body,
                hard_failures: report.hard_failures,
            });
        }
    };
    Ok(Rendered {
        body,
        hard_failures: 0,
    })
}

fn describe(l: &Loaded, format: Format) -> Result<String> {
    let ctx = &l.ctx;
    let d = ctx.datum();
    let g = &ctx.weyl;
    let simple: Vec<&Vec<i64>> = d.simple_indices.iter().map(|&i| &d.roots[i]).collect();
    let positive: Vec<&Vec<i64>> = d.positive_indices.iter().map(|&i| &d.roots[i]).collect();
    let mu = l.spec.mu_raw().map(|_| l.mu()).transpose()?;
    let mu_info = match &mu {
        Some(mu) => json!({
            "mu": mu,
            "mu_bar": rats(&ctx.mu_bar(mu)?),
            "kappa": ctx.mu_natural(mu).to_string(),
        }),
        None => serde_json::Value::Null,
    };
    let value = json!({
        "group": l.spec.group.name(),
        "family": l.spec.group.family.to_string(),
        "rank": l.spec.group.rank,
        "sigma": sigma_label(&l.spec.group.sigma),
        "sigma_order": d.sigma_order,
        "cocharacter_rank": d.cochar_rank,
        "semisimple_rank": d.semisimple_rank(),
        "roots": d.roots,
        "positive_roots": positive,
        "simple_roots": simple,
        "simple_coroots": (0..d.semisimple_rank()).map(|s| d.simple_coroot(s).to_vec()).collect::<Vec<_>>(),
        "cartan_matrix": d.cartan_matrix(),
        "weyl_order": g.order(),
        "longest_element": g.element(g.longest()).word_string(),
        "pi1_sigma_coinvariants": ctx.pi1.describe(),
        "mu": mu_info,
    });
    Ok(match format {
        Format::Json => pretty(&value),
        _ => {
            let mut s = String::new();
            writeln!(s, "group: {}", l.spec.group.name()).ok();
            writeln!(
                s,
                "roots: {} ({} positive, {} simple)",
                d.num_roots(),
                positive.len(),
                simple.len()
            )
            .ok();
            writeln!(s, "|W| = {}", g.order()).ok();
            writeln!(s, "pi_1 coinvariants: {}", ctx.pi1.describe()).ok();
            if let Some(mu) = &mu {
                writeln!(
                    s,
                    "mu = {}, mu_bar = {}",
                    fmt_int_vec(mu),
                    fmt_rat_vec(&ctx.mu_bar(mu)?)
                )
                .ok();
            }
            s
        }
    })
}

fn bgmu(l: &Loaded, format: Format) -> Result<String> {
    let ctx = &l.ctx;
    let mu = l.mu()?;
    let b = enumerate_bgmu(ctx, &mu)?;
    let labels: Vec<String> = b
        .elements
        .iter()
        .map(|e| format!("nu={} kappa={}", fmt_rat_vec(&e.nu), e.kappa))
        .collect();
    Ok(match format {
        Format::Dot => b.poset.to_dot(
            &format!("B({}, {})", l.spec.group.name(), fmt_int_vec(&mu)),
            &labels,
        ),
        Format::Json => pretty(&json!({
            "group": l.spec.group.name(),
            "mu": mu,
            "mu_bar": rats(&b.mu_bar),
            "elements": b.elements.iter().map(|e| json!({"nu": rats(&e.nu), "kappa": e.kappa.to_string()})).collect::<Vec<_>>(),
            "relations": b.poset.relations(),
            "covers": b.poset.covers(),
            "max": b.max_index,
            "basic": b.basic_index,
            "oracle_checked": b.oracle_checked,
        })),
        Format::Text => {
            let mut s = format!(
                "B({}, {}): {} classes\n",
                l.spec.group.name(),
                fmt_int_vec(&mu),
                b.elements.len()
            );
            for (i, lab) in labels.iter().enumerate() {
                let tag = match (i == b.max_index, i == b.basic_index) {
                    (true, true) => " [max, basic]",
                    (true, false) => " [max]",
                    (false, true) => " [basic]",
                    _ => "",
                };
                writeln!(s, "  {i}: {lab}{tag}").ok();
            }
            for [a, c] in b.poset.covers() {
                writeln!(s, "  {a} < {c}").ok();
            }
            s
        }
    })
}

fn eoposet(l: &Loaded, format: Format) -> Result<String> {
    let ctx = &l.ctx;
    let mu = l.mu()?;
    let strata = EoStrata::new(ctx, &mu)?;
    let labels: Vec<String> = strata.labels.iter().map(|x| x.w.word_string()).collect();
    let j: Vec<usize> = strata.parabolic.j.j.iter().map(|s| s + 1).collect();
    let max = strata.max_position(ctx);
    Ok(match format {
        Format::Dot => strata.poset.to_dot(
            &format!("EO({}, {})", l.spec.group.name(), fmt_int_vec(&mu)),
            &labels,
        ),
        Format::Json => pretty(&json!({
            "group": l.spec.group.name(),
            "mu": mu,
            "J": j,
            "nodes": strata.labels.iter().map(|x| json!({
                "w": x.w.word_string(),
                "word": x.w.word.iter().map(|s| s + 1).collect::<Vec<_>>(),
                "length": x.length,
            })).collect::<Vec<_>>(),
            "relations": strata.poset.relations(),
            "covers": strata.poset.covers(),
            "max": max,
            "min": 0,
        })),
        Format::Text => {
            let mut s = format!("^J W for J = {:?}: {} strata\n", j, labels.len());
            for (i, x) in strata.labels.iter().enumerate() {
                writeln!(s, "  {i}: {} (length {})", x.w.word_string(), x.length).ok();
            }
            for [a, c] in strata.poset.covers() {
                writeln!(s, "  {} < {}", labels[a], labels[c]).ok();
            }
            s
        }
    })
}

fn eo2newton(l: &Loaded, format: Format) -> Result<String> {
    let ctx = &l.ctx;
    let mu = l.mu()?;
    let t = eo_to_newton_table(ctx, &mu)?;
    Ok(match format {
        Format::Json => pretty(&json!({
            "group": l.spec.group.name(),
            "mu": mu,
            "rows": t.rows.iter().map(|r| json!({
                "w": r.w.word_string(),
                "length": r.w.length,
                "nu": rats(&r.class.nu),
                "kappa": r.class.kappa.to_string(),
                "is_bmax": r.is_bmax,
                "is_wmax": r.is_wmax,
                "representative": affine_json(&r.representative),
            })).collect::<Vec<_>>(),
            "monotonicity_reversals": t.monotonicity_reversals,
        })),
        _ => {
            let mut s = String::new();
            for r in &t.rows {
                let tag = if r.is_wmax { "  (w_max)" } else { "" };
                writeln!(
                    s,
                    "{:<12} -> nu = {}{tag}",
                    r.w.word_string(),
                    fmt_rat_vec(&r.class.nu)
                )
                .ok();
            }
            s
        }
    })
}

fn levi_for(l: &Loaded, mu: &[i64]) -> Result<LeviDatum> {
    let ctx = &l.ctx;
    match &l.spec.levi {
        LeviChoice::Torus => Ok(LeviDatum::from_roots(ctx, vec![])),
        LeviChoice::Centralizer => levi_centralizer(ctx, &ctx.mu_bar(mu)?),
        LeviChoice::CentralizerOf(_) => {
            let v = l.levi_vector()?.expect("levi vector present");
            levi_centralizer(ctx, &to_rat(&v))
        }
    }
}

fn hncheck(l: &Loaded, format: Format) -> Result<String> {
    let ctx = &l.ctx;
    let lambda = l.mu()?;
    let m = levi_for(l, &lambda)?;
    let b0 = l.b0()?;
    let r = hn_applicable(ctx, &lambda, &m, &b0)?;
    let d = ctx.datum();
    Ok(match format {
        Format::Json => pretty(&json!({
            "group": l.spec.group.name(),
            "lambda": lambda,
            "levi_positive_roots": m.positive.iter().map(|&i| d.roots[i].clone()).collect::<Vec<_>>(),
            "b0": affine_json(&b0),
            "kappa_matches": r.kappa_matches,
            "positive": r.positive,
            "newton_dominant": r.newton_dominant,
            "applicable": r.applicable(),
            "kappa_b0": r.kappa_b0.to_string(),
            "kappa_lambda": r.kappa_lambda.to_string(),
            "vm_image": rats(&r.vm_image),
            "m_newton": rats(&r.m_newton),
        })),
        _ => format!(
            "applicable: {}\n  kappa_M(b0) = kappa_M(lambda): {} ({} vs {})\n  image in V_M positive: {} ({})\n  M-Newton point G-dominant: {} ({})\n",
            r.applicable(),
            r.kappa_matches,
            r.kappa_b0,
            r.kappa_lambda,
            r.positive,
            fmt_rat_vec(&r.vm_image),
            r.newton_dominant,
            fmt_rat_vec(&r.m_newton),
        ),
    })
}

/// Runs a loop-group experiment for a `GL_n` spec.
pub fn verify_loop(l: &Loaded, opts: &LoopOptions) -> Result<ExperimentReport> {
    if l.spec.group.family != Family::GL || l.spec.group.sigma != SigmaSpec::Identity {
        return Err(Error::InvalidSpec(
            "loop-group experiments need GL_n with sigma=identity".into(),
        ));
    }
    let mu = l.mu()?;
    let top = mu.iter().copied().max().unwrap_or(0).max(0) as usize;
    let mut spec = LoopSpec::new(&mu, opts.q, opts.prec.unwrap_or(top + 2));
    if let Some(s) = &opts.m_schedule {
        spec.m_schedule = s.clone();
    }
    spec.samples = opts.samples;
    spec.seed = opts.seed;
    spec.exhaustive = opts.exhaustive;
    verify_double_coset_conjugacy(&spec, opts.experiment)
}

pub fn loop_summary(r: &ExperimentReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "experiment {:?}: GL_{} mu={} q={} N={} seed={}",
        r.experiment,
        r.params.n,
        fmt_int_vec(&r.params.mu),
        r.params.q,
        r.params.prec,
        r.seed
    )
    .ok();
    writeln!(
        s,
        "samples {}  found {}  unresolved {} ({:.2}%)  hard failures {}",
        r.samples,
        r.found,
        r.unresolved,
        100.0 * r.unresolved_rate(),
        r.hard_failures
    )
    .ok();
    let mut by_m = std::collections::BTreeMap::new();
    for w in &r.witnesses {
        if let Some(m) = w.m {
            *by_m.entry(m).or_insert(0usize) += 1;
        }
    }
    if !by_m.is_empty() {
        let parts: Vec<String> = by_m.iter().map(|(m, c)| format!("m={m}: {c}")).collect();
        writeln!(s, "witness degrees: {}", parts.join(", ")).ok();
    }
    for w in r.witnesses.iter().filter(|w| w.detail.is_some()) {
        writeln!(
            s,
            "sample {}: {}",
            w.index,
            w.detail.as_deref().unwrap_or("")
        )
        .ok();
    }
    s
}
