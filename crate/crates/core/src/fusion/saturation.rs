//! Saturation: every `F`-class representative (chosen fully normalized)
//! must be fully centralized, fully automized and receptive.

use std::collections::HashSet;

use serde::Serialize;

use super::{FusionSystem, Positions};
use crate::error::Result;
use crate::group::{p_part, PermGroup};
use crate::grp::small::Bits;
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Sylow,
    Extension,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Elements of the subgroup concerned.
    pub subgroup: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub saturated: bool,
    pub classes_checked: usize,
    pub morphisms_checked: usize,
    pub violations: Vec<Violation>,
}

fn group_elements(g: &PermGroup) -> Result<Vec<Perm>> {
    let mut e = g.elements()?;
    e.sort();
    Ok(e)
}

pub fn saturation_check(f: &FusionSystem) -> Result<SaturationReport> {
    let s = &f.s;
    let mut violations = Vec::new();
    let mut morphisms = 0;
    for (c, fc) in f.fclasses.iter().enumerate() {
        let r = &fc.positions;
        let a = &fc.aut;
        let b = f.aut_s(c);
        if !fc.flags.fully_centralized {
            violations.push(Violation {
                axiom: Axiom::Sylow,
                subgroup: r.elems.clone(),
                detail: "fully normalized but not fully centralized".into(),
            });
        }
        if b.order() != p_part(a.order(), f.p as u128) {
            violations.push(Violation {
                axiom: Axiom::Sylow,
                subgroup: r.elems.clone(),
                detail: format!("|Aut_S| = {} but |Aut_F| = {}", b.order(), a.order()),
            });
        }
        let nsr = f.table.classes[fc.rep].normalizer;
        let a_elems = f.aut_elements(c)?.to_vec();
        let b_elems = group_elements(&b)?;
        for &i in &fc.members {
            let q = Positions::new(&f.table.classes[i].rep);
            let tau = f.transport_positions(&q);
            let tau_inv = tau.inv();
            let nsq = f.table.classes[i].normalizer;
            // Aut_S(Q) carried to R
            let ai_gens: Vec<Perm> = s
                .generating_set(&nsq)
                .into_iter()
                .map(|u| tau_inv.mul(&f.induced(&q, &s.elements[u])).mul(&tau))
                .collect();
            let ai = PermGroup::from_gens(r.len(), ai_gens);
            let ai_elems = group_elements(&ai)?;
            let mut visited: HashSet<Perm> = HashSet::new();
            for alpha in &a_elems {
                if visited.contains(alpha) {
                    continue;
                }
                for x in &ai_elems {
                    for y in &b_elems {
                        visited.insert(x.mul(alpha).mul(y));
                    }
                }
                morphisms += 1;
                let phi = tau.mul(alpha);
                if !extends(f, &q, r, &nsr, &phi, &b)? {
                    violations.push(Violation {
                        axiom: Axiom::Extension,
                        subgroup: q.elems.clone(),
                        detail: format!(
                            "isomorphism onto the class representative of order {} does not extend to N_phi",
                            r.len()
                        ),
                    });
                }
            }
        }
    }
    Ok(SaturationReport {
        saturated: violations.is_empty(),
        classes_checked: f.fclasses.len(),
        morphisms_checked: morphisms,
        violations,
    })
}

/// Whether `phi: Q → R` (positions) extends to `N_phi`.
fn extends(f: &FusionSystem, q: &Positions, r: &Positions, nsr: &Bits, phi: &Perm, aut_s_r: &PermGroup) -> Result<bool> {
    let s = &f.s;
    let phi_inv = phi.inv();
    let nsq = s.normalizer(&q.bits);
    let mut nphi = Bits::empty();
    for u in nsq.iter() {
        let cu = f.induced(q, &s.elements[u]);
        if aut_s_r.contains(&phi_inv.mul(&cu).mul(phi)) {
            nphi.insert(u);
        }
    }
    let xpos = Positions::new(&nphi);
    let cx = f.fclass_of(&nphi);
    let tau_x = f.transport_positions(&xpos);
    let qgens = s.generating_set(&q.bits);
    // images under tau_x of generators of Q, and their required images
    let src: Vec<usize> = qgens.iter().map(|&g| tau_x.image(xpos.pos(g))).collect();
    let want: Vec<usize> = qgens.iter().map(|&g| r.elems[phi.image(q.pos(g))]).collect();
    let betas = f.aut_elements(cx)?;
    for &j in &f.fclasses[cx].members {
        for y in f.table.members(j) {
            if !r.bits.is_subset(&y) || !y.is_subset(nsr) {
                continue;
            }
            let ypos = Positions::new(&y);
            let sigma = f.transport_positions(&ypos);
            let dst: Vec<usize> = want.iter().map(|&w| sigma.image(ypos.pos(w))).collect();
            if betas.iter().any(|b| src.iter().zip(&dst).all(|(&a, &d)| b.image(a) == d)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
