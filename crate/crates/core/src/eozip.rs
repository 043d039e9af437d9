//! Ekedahl–Oort labels `^J W`, their affine representatives and the induced
//! map to `B(G, μ)`.

use crate::affine::{AffineElement, GroupContext};
use crate::bgmu::{enumerate_bgmu, newton_leq, BGmuPoset, NewtonClass};
use crate::error::{Error, Result};
use crate::lattice::fmt_int_vec;
use crate::poset::Poset;
use crate::rootdata::Cochar;
use crate::weyl::{Parabolic, ParabolicType, WeylElement};
use std::collections::HashSet;

#[derive(Clone, Debug)]
pub struct EoLabel {
    pub w: WeylElement,
    pub j: ParabolicType,
    pub length: usize,
}

/// Simple reflections fixing `σ^{-1}(μ)`.
pub fn type_j(ctx: &GroupContext, mu: &[i64]) -> Result<ParabolicType> {
    let d = ctx.datum();
    if !d.is_dominant_int(mu) {
        return Err(Error::NotDominant(fmt_int_vec(mu)));
    }
    let chi = d.sigma_inv_apply(mu);
    Ok(ParabolicType::new((0..d.semisimple_rank()).filter(|&s| {
        crate::lattice::dot(d.simple_root(s), &chi) == 0
    })))
}

/// `^J W` for the type of `μ`, with the twisted order.
#[derive(Clone, Debug)]
pub struct EoStrata {
    pub mu: Cochar,
    pub parabolic: Parabolic,
    pub labels: Vec<EoLabel>,
    pub poset: Poset,
}

impl EoStrata {
    pub fn new(ctx: &GroupContext, mu: &[i64]) -> Result<EoStrata> {
        let g = &ctx.weyl;
        let j = type_j(ctx, mu)?;
        let parabolic = g.parabolic(&j);
        let poset = parabolic.eo_poset(g)?;
        let labels = parabolic
            .reps
            .iter()
            .map(|&w| EoLabel {
                w: g.element(w).clone(),
                j: j.clone(),
                length: g.length(w),
            })
            .collect();
        Ok(EoStrata {
            mu: mu.to_vec(),
            parabolic,
            labels,
            poset,
        })
    }

    /// Position of `w_max = w0_J w0` among the labels.
    pub fn max_position(&self, ctx: &GroupContext) -> usize {
        self.parabolic
            .position(self.parabolic.w_max(&ctx.weyl))
            .expect("w_max lies in ^J W")
    }

    /// Labels `w'` with `w' ≼ w`.
    pub fn closure_set(&self, pos: usize) -> Vec<usize> {
        self.poset.down_set(pos)
    }

    fn weyl_index(&self, pos: usize) -> usize {
        self.parabolic.reps[pos]
    }

    /// `t^{u(μ)} u` with `u = w w0 σ(w0_J)`.
    pub fn representative(&self, ctx: &GroupContext, w: usize) -> Result<AffineElement> {
        let g = &ctx.weyl;
        if !g.is_min_coset_rep(w, &self.parabolic.j) {
            return Err(Error::NotMinimalRep(format!(
                "{} for J = {}",
                g.element(w).word_string(),
                self.parabolic.j.label()
            )));
        }
        let u = g.mul(g.mul(w, g.longest()), g.sigma(self.parabolic.w0_j));
        Ok(AffineElement::new(g, g.apply(u, &self.mu), u))
    }

    pub fn representative_at(&self, ctx: &GroupContext, pos: usize) -> Result<AffineElement> {
        self.representative(ctx, self.weyl_index(pos))
    }

    /// Newton class of the representative; checked against the enumerated `B(G, μ)`.
    pub fn to_newton(&self, ctx: &GroupContext, bgmu: &BGmuPoset, w: usize) -> Result<NewtonClass> {
        let rep = self.representative(ctx, w)?;
        let class = NewtonClass {
            nu: ctx.newton_point(&rep)?,
            kappa: ctx.kottwitz_point(&rep),
        };
        if bgmu.position(&class).is_none() {
            return Err(Error::Consistency(format!(
                "class of the representative of {} is not in B(G, μ)",
                ctx.weyl.element(w).word_string()
            )));
        }
        Ok(class)
    }

    /// Both forms of zip-orbit representatives, `w0_J w w0` and `w w0 σ(w0_J)`.
    pub fn zip_orbit_representatives(
        &self,
        ctx: &GroupContext,
    ) -> Result<(Vec<usize>, Vec<usize>)> {
        let g = &ctx.weyl;
        let (w0, w0j) = (g.longest(), self.parabolic.w0_j);
        let tw = g.sigma(w0j);
        let first: Vec<usize> = self
            .parabolic
            .reps
            .iter()
            .map(|&w| g.mul(g.mul(w0j, w), w0))
            .collect();
        let second: Vec<usize> = self
            .parabolic
            .reps
            .iter()
            .map(|&w| g.mul(g.mul(w, w0), tw))
            .collect();
        for (a, b) in first.iter().zip(&second) {
            if *a != g.mul(g.mul(w0j, *b), g.inv(tw)) {
                return Err(Error::Consistency(
                    "zip representatives are not related by the W_J twist".into(),
                ));
            }
        }
        for list in [&first, &second] {
            if list.iter().collect::<HashSet<_>>().len() != list.len() {
                return Err(Error::Consistency(
                    "zip representatives are not distinct".into(),
                ));
            }
        }
        Ok((first, second))
    }
}

/// One row of the EO-to-Newton table.
#[derive(Clone, Debug)]
pub struct EoNewtonRow {
    pub w: WeylElement,
    pub representative: AffineElement,
    pub class: NewtonClass,
    pub is_bmax: bool,
    pub is_wmax: bool,
}

#[derive(Clone, Debug)]
pub struct EoNewtonTable {
    pub strata: EoStrata,
    pub bgmu: BGmuPoset,
    pub rows: Vec<EoNewtonRow>,
    /// Pairs `w' ≼ w` whose Newton classes are strictly ordered the other way.
    pub monotonicity_reversals: Vec<(usize, usize)>,
}

pub fn eo_to_newton_table(ctx: &GroupContext, mu: &[i64]) -> Result<EoNewtonTable> {
    let strata = EoStrata::new(ctx, mu)?;
    let bgmu = enumerate_bgmu(ctx, mu)?;
    let max_pos = strata.max_position(ctx);
    let mut rows = vec![];
    for (pos, &w) in strata.parabolic.reps.iter().enumerate() {
        let rep = strata.representative(ctx, w)?;
        let class = strata.to_newton(ctx, &bgmu, w)?;
        if class.kappa != ctx.mu_natural(mu) {
            return Err(Error::Consistency(
                "representative has the wrong Kottwitz point".into(),
            ));
        }
        let is_bmax = class == *bgmu.b_max();
        rows.push(EoNewtonRow {
            w: ctx.weyl.element(w).clone(),
            representative: rep,
            class,
            is_bmax,
            is_wmax: pos == max_pos,
        });
    }
    if !rows[max_pos].is_bmax {
        return Err(Error::Consistency(
            "the representative of w_max is not μ-ordinary".into(),
        ));
    }
    let mut reversals = vec![];
    for a in 0..rows.len() {
        for b in 0..rows.len() {
            if strata.poset.lt(a, b) {
                let (na, nb) = (&rows[a].class.nu, &rows[b].class.nu);
                if na != nb && newton_leq(ctx, nb, na)? {
                    reversals.push((a, b));
                }
            }
        }
    }
    Ok(EoNewtonTable {
        strata,
        bgmu,
        rows,
        monotonicity_reversals: reversals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{to_rat, Q};
    use crate::rootdata::{Family, GroupSpec, SigmaSpec};

    fn ctx(f: Family, n: usize, s: SigmaSpec) -> GroupContext {
        GroupContext::new(&GroupSpec::new(f, n).with_sigma(s)).unwrap()
    }

    #[test]
    fn type_j_examples() {
        let g2 = ctx(Family::GL, 2, SigmaSpec::Identity);
        assert!(type_j(&g2, &[1, 0]).unwrap().j.is_empty());
        let g3 = ctx(Family::GL, 3, SigmaSpec::Identity);
        assert_eq!(type_j(&g3, &[1, 0, 0]).unwrap(), ParabolicType::new([1]));
        assert_eq!(type_j(&g3, &[1, 1, 1]).unwrap(), ParabolicType::all(2));
        // Twisted: J is the type of σ^{-1}(μ) = (0,0,-1).
        let t3 = ctx(Family::GL, 3, SigmaSpec::Opposition);
        assert_eq!(type_j(&t3, &[1, 0, 0]).unwrap(), ParabolicType::new([0]));
    }

    #[test]
    fn labels_examples() {
        let g2 = ctx(Family::GL, 2, SigmaSpec::Identity);
        let e = EoStrata::new(&g2, &[1, 0]).unwrap();
        assert_eq!(e.labels.len(), 2);
        assert_eq!(e.closure_set(1), vec![0, 1]);
        assert_eq!(e.closure_set(0), vec![0]);
        let g3 = ctx(Family::GL, 3, SigmaSpec::Identity);
        let e = EoStrata::new(&g3, &[1, 0, 0]).unwrap();
        let lens: Vec<usize> = e.labels.iter().map(|l| l.length).collect();
        assert_eq!(lens, vec![0, 1, 2]);
    }

    #[test]
    fn representative_examples() {
        let g2 = ctx(Family::GL, 2, SigmaSpec::Identity);
        let e = EoStrata::new(&g2, &[1, 0]).unwrap();
        let r = e.representative(&g2, 0).unwrap();
        assert_eq!(r.translation, vec![0, 1]);
        assert_eq!(r.finite.word, vec![0]);
        let wmax = e.parabolic.w_max(&g2.weyl);
        let r = e.representative(&g2, wmax).unwrap();
        assert_eq!(r.translation, vec![1, 0]);
        assert_eq!(r.finite.length, 0);

        let g3 = ctx(Family::GL, 3, SigmaSpec::Identity);
        let e = EoStrata::new(&g3, &[1, 0, 0]).unwrap();
        let w = &g3.weyl;
        let s1 = w.from_word(&[0]);
        let r = e.representative(&g3, s1).unwrap();
        // Matrix product oracle for u = s1 * w0 * s2.
        let d = g3.datum();
        let m = d
            .reflection_matrix(d.simple_indices[0])
            .mul(&d.w0_cochar)
            .mul(&d.reflection_matrix(d.simple_indices[1]));
        assert_eq!(r.finite.action, m);
        assert_eq!(r.translation, m.apply(&[1, 0, 0]));
        assert!(e.representative(&g3, w.from_word(&[1])).is_err());
    }

    #[test]
    fn newton_of_representatives() {
        let g2 = ctx(Family::GL, 2, SigmaSpec::Identity);
        let t = eo_to_newton_table(&g2, &[1, 0]).unwrap();
        let h = Q::new(1, 2);
        assert_eq!(t.rows[0].class.nu, vec![h, h]);
        assert_eq!(t.rows[1].class.nu, to_rat(&[1, 0]));
        assert!(t.rows[1].is_bmax && t.rows[1].is_wmax);
        let g3 = ctx(Family::GL, 3, SigmaSpec::Identity);
        let t = eo_to_newton_table(&g3, &[1, 0, 0]).unwrap();
        let th = Q::new(1, 3);
        assert_eq!(t.rows[0].class.nu, vec![th; 3]);
        assert_eq!(t.rows[0].representative.finite.action.order(10), Some(3));
    }

    #[test]
    fn zip_representatives() {
        let g2 = ctx(Family::GL, 2, SigmaSpec::Identity);
        let e = EoStrata::new(&g2, &[1, 0]).unwrap();
        let (a, b) = e.zip_orbit_representatives(&g2).unwrap();
        let s = g2.weyl.from_word(&[0]);
        assert_eq!(b, vec![s, 0]);
        assert_eq!(a, vec![s, 0]);
        let g3 = ctx(Family::GL, 3, SigmaSpec::Identity);
        let (a, b) = EoStrata::new(&g3, &[1, 0, 0])
            .unwrap()
            .zip_orbit_representatives(&g3)
            .unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(b.len(), 3);
        let c = EoStrata::new(&g3, &[1, 1, 1])
            .unwrap()
            .zip_orbit_representatives(&g3)
            .unwrap();
        assert_eq!((c.0.len(), c.1.len()), (1, 1));
    }

    #[test]
    fn twisted_and_type_c_wmax_is_ordinary() {
        for (c, mu) in [
            (ctx(Family::GL, 3, SigmaSpec::Opposition), vec![1, 0, 0]),
            (ctx(Family::GL, 4, SigmaSpec::Opposition), vec![2, 1, 0, 0]),
            (ctx(Family::Sp, 6, SigmaSpec::Identity), vec![1, 1, 0]),
            (ctx(Family::GSp, 6, SigmaSpec::Identity), vec![1, 1, 1, 1]),
        ] {
            let t = eo_to_newton_table(&c, &mu).unwrap();
            let pos = t.strata.max_position(&c);
            assert_eq!(t.rows[pos].class, *t.bgmu.b_max());
        }
    }
}
