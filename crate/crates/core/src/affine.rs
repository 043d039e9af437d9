//! Elements `t^λ w` of the extended affine Weyl group, their twisted Newton
//! points, and Kottwitz points in the sigma-coinvariants of `π₁`.

use crate::error::{Error, Result};
use crate::lattice::{hermite_rows, smith, IntMatrix, Q};
use crate::rootdata::{Cochar, GroupSpec, RatCochar, RootDatum};
use crate::weyl::{WeylElement, WeylGroup};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

/// Cap on the period of `w∘σ` used for averaging.
pub const MAX_PERIOD: usize = 10_000;

/// `t^translation * finite`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub translation: Cochar,
    pub finite: WeylElement,
}

impl AffineElement {
    pub fn translation(g: &WeylGroup, lambda: Cochar) -> AffineElement {
        AffineElement {
            translation: lambda,
            finite: g.element(g.identity()).clone(),
        }
    }

    pub fn new(g: &WeylGroup, lambda: Cochar, w: usize) -> AffineElement {
        AffineElement {
            translation: lambda,
            finite: g.element(w).clone(),
        }
    }
}

/// Element of a finitely generated abelian group `Z^a ⊕ ⊕ Z/d_i`.
///
/// `invariants[k] == 0` marks a free coordinate, otherwise `value[k]` is
/// reduced into `0..invariants[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KottwitzPoint {
    pub value: Vec<i64>,
    pub invariants: Vec<i64>,
}

impl fmt::Display for KottwitzPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .value
            .iter()
            .zip(&self.invariants)
            .map(|(v, d)| {
                if *d == 0 {
                    v.to_string()
                } else {
                    format!("{v} mod {d}")
                }
            })
            .collect();
        if parts.len() == 1 {
            f.write_str(&parts[0])
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

/// Cokernel of `[coroots | σ - 1]` with a canonical-form map.
#[derive(Clone, Debug)]
pub struct Pi1Coinvariants {
    free_rows: Vec<Vec<i64>>,
    torsion_rows: Vec<(Vec<i64>, i64)>,
}

impl Pi1Coinvariants {
    pub fn new(cochar_rank: usize, coroots: &[Vec<i64>], sigma: &IntMatrix) -> Pi1Coinvariants {
        let d = cochar_rank;
        let gens = IntMatrix::from_cols(coroots, d);
        let rel = gens.hcat(&sigma.sub(&IntMatrix::identity(d)));
        let s = smith(&rel);
        let mut torsion_rows = vec![];
        for (i, &di) in s.diag.iter().enumerate() {
            if di > 1 {
                torsion_rows.push((s.u.row(i).to_vec(), di));
            }
        }
        let free: Vec<Vec<i64>> = (s.rank..d).map(|i| s.u.row(i).to_vec()).collect();
        Pi1Coinvariants {
            free_rows: hermite_rows(&free),
            torsion_rows,
        }
    }

    pub fn for_datum(datum: &RootDatum) -> Pi1Coinvariants {
        Self::new(datum.cochar_rank, &datum.coroots, &datum.sigma_cochar)
    }

    pub fn invariants(&self) -> Vec<i64> {
        let mut v = vec![0; self.free_rows.len()];
        v.extend(self.torsion_rows.iter().map(|(_, d)| *d));
        v
    }

    pub fn free_rank(&self) -> usize {
        self.free_rows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rows.is_empty() && self.torsion_rows.is_empty()
    }

    /// `Z`, `Z/2`, `Z^2 x Z/3`, or `0`.
    pub fn describe(&self) -> String {
        let mut parts = vec![];
        match self.free_rows.len() {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        for (_, d) in &self.torsion_rows {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" x ")
        }
    }

    pub fn canonical(&self, v: &[i64]) -> KottwitzPoint {
        let mut value: Vec<i64> = self
            .free_rows
            .iter()
            .map(|r| crate::lattice::dot(r, v))
            .collect();
        value.extend(
            self.torsion_rows
                .iter()
                .map(|(r, d)| crate::lattice::dot(r, v).mod_floor(d)),
        );
        KottwitzPoint {
            value,
            invariants: self.invariants(),
        }
    }

    /// Free part of the canonical map extended to rational vectors.
    pub fn rational_image(&self, v: &[Q]) -> Vec<Q> {
        self.free_rows
            .iter()
            .map(|r| crate::lattice::dot_q(r, v))
            .collect()
    }

    /// The free coordinates of `kappa` agree with the image of `nu`.
    pub fn compatible(&self, kappa: &KottwitzPoint, nu: &[Q]) -> bool {
        let img = self.rational_image(nu);
        img.iter()
            .zip(&kappa.value)
            .all(|(a, b)| *a == Q::from_integer(*b))
    }
}

/// Weyl group, π₁ coinvariants and the root datum they came from.
#[derive(Clone, Debug)]
pub struct GroupContext {
    pub weyl: WeylGroup,
    pub pi1: Pi1Coinvariants,
}

impl GroupContext {
    pub fn new(spec: &GroupSpec) -> Result<GroupContext> {
        let datum = RootDatum::build(spec)?;
        let weyl = WeylGroup::generate(&datum)?;
        let pi1 = Pi1Coinvariants::for_datum(&datum);
        Ok(GroupContext { weyl, pi1 })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.weyl.datum
    }

    pub fn kottwitz_point(&self, a: &AffineElement) -> KottwitzPoint {
        self.pi1.canonical(&a.translation)
    }

    pub fn mu_natural(&self, mu: &[i64]) -> KottwitzPoint {
        self.pi1.canonical(mu)
    }

    pub fn newton_point(&self, a: &AffineElement) -> Result<RatCochar> {
        TwistedAverager::new(self.datum(), &a.finite.action)?.newton_point(self, &a.translation)
    }

    /// sigma-orbit average of a dominant cocharacter.
    pub fn mu_bar(&self, mu: &[i64]) -> Result<RatCochar> {
        let d = self.datum();
        if !d.is_dominant_int(mu) {
            return Err(Error::NotDominant(crate::lattice::fmt_int_vec(mu)));
        }
        let mut orbit = vec![mu.to_vec()];
        loop {
            let next = d.sigma_apply(orbit.last().unwrap());
            if next == mu {
                break;
            }
            orbit.push(next);
        }
        let r = orbit.len() as i64;
        Ok((0..d.cochar_rank)
            .map(|k| Q::new(orbit.iter().map(|v| v[k]).sum(), r))
            .collect())
    }

    /// Average of `v` over one period of sigma.
    pub fn sigma_average(&self, v: &[Q]) -> RatCochar {
        let d = self.datum();
        let n = d.sigma_order;
        let mut acc = vec![Q::zero(); d.cochar_rank];
        let mut cur = v.to_vec();
        for _ in 0..n {
            for (a, c) in acc.iter_mut().zip(&cur) {
                *a += *c;
            }
            cur = d.sigma_apply_q(&cur);
        }
        acc.into_iter()
            .map(|x| x / Q::from_integer(n as i64))
            .collect()
    }
}

/// Precomputed `(1/n) Σ_{i<n} (wσ)^i` for a fixed `w`.
#[derive(Clone, Debug)]
pub struct TwistedAverager {
    pub period: usize,
    sum: IntMatrix,
}

impl TwistedAverager {
    pub fn new(datum: &RootDatum, w: &IntMatrix) -> Result<TwistedAverager> {
        let a = w.mul(&datum.sigma_cochar);
        let k = a.order(MAX_PERIOD).ok_or_else(|| {
            Error::Consistency(format!("twisted Weyl action has period above {MAX_PERIOD}"))
        })?;
        let n = k.lcm(&datum.sigma_order);
        if n > MAX_PERIOD {
            return Err(Error::Consistency(format!(
                "twisted period {n} exceeds {MAX_PERIOD}"
            )));
        }
        let d = datum.cochar_rank;
        let mut sum = IntMatrix::zeros(d, d);
        let mut p = IntMatrix::identity(d);
        for _ in 0..n {
            sum = sum.add(&p);
            p = p.mul(&a);
        }
        Ok(TwistedAverager { period: n, sum })
    }

    /// The average itself, before taking a dominant representative.
    pub fn average(&self, lambda: &[i64]) -> RatCochar {
        let n = self.period as i64;
        self.sum
            .apply(lambda)
            .into_iter()
            .map(|x| Q::new(x, n))
            .collect()
    }

    pub fn newton_point(&self, ctx: &GroupContext, lambda: &[i64]) -> Result<RatCochar> {
        let d = ctx.datum();
        let nu = d.dominant_vector(&self.average(lambda));
        if !d.is_dominant(&nu) || d.sigma_apply_q(&nu) != nu {
            return Err(Error::Consistency(format!(
                "Newton point {} is not dominant and sigma-fixed",
                crate::lattice::fmt_rat_vec(&nu)
            )));
        }
        Ok(nu)
    }
}
