//! The `L_2(q) ≤ PGL_2(q) ≤ PΓL_2(q)` tower: Sylow structure, involution
//! classes and the field automorphism.

use serde::Serialize;

use super::{nu2, ItemCheck};
use crate::atlas::{line_frobenius, linear_group, projective_line_group, Field, LineFamily};
use crate::error::{FswError, Result};
use crate::group::{p_part, PermGroup};
use crate::grp::iso::are_isomorphic;
use crate::grp::local::{centralizer_element, conjugacy_class, normalizer};
use crate::grp::normal::normal_closure_of;
use crate::grp::small::SmallGroup;
use crate::grp::sylow::sylow;
use crate::perm::Perm;
use crate::ptheory::{identify_isotype, Family};

#[derive(Clone, Debug, Serialize)]
pub struct OmnibusReport {
    pub q: u64,
    pub k: u32,
    pub items: Vec<ItemCheck>,
    pub holds: bool,
}

fn is_family(g: &PermGroup, fam: Family, order: u128) -> Result<bool> {
    if g.order() != order {
        return Ok(false);
    }
    let l = identify_isotype(g)?;
    // a four-group is the dihedral group of order 4
    Ok(l.family == fam || (fam == Family::Dihedral && order == 4 && l.family == Family::Elementary))
}

fn all_conjugate(k: &PermGroup, xs: &[Perm]) -> Result<bool> {
    let Some(x) = xs.first() else {
        return Ok(true);
    };
    let cls: std::collections::HashSet<Perm> = conjugacy_class(k, x)?.into_iter().collect();
    Ok(xs.iter().all(|y| cls.contains(y)))
}

/// `O^2(X)`: the normal closure of the odd-order elements.
fn o2_residue(x: &PermGroup) -> Result<PermGroup> {
    let odd: Vec<Perm> = x.elements()?.into_iter().filter(|e| e.order() % 2 == 1).collect();
    Ok(normal_closure_of(x, &odd))
}

pub fn l2q_omnibus_check(q: u64) -> Result<OmnibusReport> {
    let fld = Field::new(q as usize)?;
    if fld.p == 2 {
        return Err(FswError::Invalid("q must be odd".into()));
    }
    let k_grp = projective_line_group(LineFamily::Psl2, &fld)?;
    let pgl = projective_line_group(LineFamily::Pgl2, &fld)?;
    let h_grp = projective_line_group(LineFamily::PGammaL2, &fld)?;
    let phi = line_frobenius(&fld);
    let e = fld.e;
    let f_grp = h_grp.subgroup(vec![phi.clone()]);
    // an involution in F, when |F| is even
    let f_inv = (e % 2 == 0).then(|| phi.pow((e / 2) as i64));
    let p = match &f_inv {
        Some(f) => sylow(&centralizer_element(&k_grp, f)?, 2, 1)?,
        None => sylow(&k_grp, 2, 1)?,
    };
    let u = match &f_inv {
        Some(f) => {
            let mut g = p.gens().to_vec();
            g.push(f.clone());
            h_grp.subgroup(g)
        }
        None => p.clone(),
    };
    let t = sylow(&normalizer(&h_grp, &u)?, 2, 1)?;
    let t_el = t.elements()?;
    let hs: Vec<Perm> = t_el.iter().filter(|x| x.order() == 2 && pgl.contains(x) && !k_grp.contains(x)).cloned().collect();
    let kk = p.order().trailing_zeros();
    let z = p.elements()?.into_iter().find(|x| x.order() == 2 && p.gens().iter().all(|g| g.mul(x) == x.mul(g))).unwrap();
    let mut items = Vec::new();
    let with = |g: &PermGroup, x: &Perm| {
        let mut v = g.gens().to_vec();
        v.push(x.clone());
        h_grp.subgroup(v)
    };

    // (a)
    let kf = with(&k_grp, &phi);
    let out_abelian = h_grp.gens().iter().all(|a| h_grp.gens().iter().all(|b| k_grp.contains(&a.comm(b))));
    let a_ok = !hs.is_empty()
        && t.order() == p_part(h_grp.order(), 2)
        && h_grp.order() == k_grp.order() * 2 * e as u128
        && f_grp.order() == e as u128
        && out_abelian
        && hs.iter().all(|h| !kf.contains(h) && with(&kf, h).order() == h_grp.order());
    items.push(ItemCheck::new(
        "a",
        "H = K<h>F with h an involution of T, F cyclic, Out(K) = <h> x F",
        a_ok,
        format!("|H:K| = {}, |F| = {}, {} choices of h", h_grp.order() / k_grp.order(), f_grp.order(), hs.len()),
    ));
    // (b)
    let b_ok = is_family(&p, Family::Dihedral, 1 << kk)? && nu2(q * q - 1) == kk + 1;
    items.push(ItemCheck::new("b", "P is dihedral of order 2^k with nu2(q^2-1) = k+1", b_ok, format!("|P| = {}", p.order())));
    // (c)
    let mut c_ok = !hs.is_empty();
    for h in &hs {
        c_ok &= with(&k_grp, h).equals(&pgl) && is_family(&with(&p, h), Family::Dihedral, 2 * p.order())?;
    }
    items.push(ItemCheck::new("c", "K<h> = PGL2(q) and P<h> is dihedral", c_ok, String::new()));
    // (d)
    let d_ok = f_grp.order() == e as u128 && (e == 1 || !pgl.contains(&phi)) && k_grp.is_normalized_by(&phi);
    items.push(ItemCheck::new("d", "F is the Galois group of GF(q), acting by field automorphisms", d_ok, format!("|F| = {e}")));
    // (e)
    let ft: Vec<Perm> = t_el.iter().filter(|x| f_grp.contains(x)).cloned().collect();
    let mut e_ok = ft.len() as u128 <= 1u128 << kk.saturating_sub(2);
    for h in &hs {
        let ph = with(&p, h);
        e_ok &= ft.iter().all(|x| x.is_identity() || !ph.contains(x));
    }
    items.push(ItemCheck::new("e", "P<h> meets F_T trivially and |F_T| <= 2^(k-2)", e_ok, format!("|F_T| = {}", ft.len())));
    // (f)
    let p_inv: Vec<Perm> = p.elements()?.into_iter().filter(|x| x.order() == 2).collect();
    let mut f_ok = all_conjugate(&k_grp, &p_inv)?;
    for h in &hs {
        let ph_inv: Vec<Perm> = p.elements()?.into_iter().map(|y| y.mul(h)).filter(|x| x.order() == 2).collect();
        f_ok &= all_conjugate(&k_grp, &ph_inv)?;
    }
    items.push(ItemCheck::new("f", "all involutions of P are K-conjugate, as are all involutions of Ph", f_ok, String::new()));
    // (g), (h)
    match &f_inv {
        None => {
            items.push(ItemCheck::new("g", "no involution in F_T", true, "vacuous".into()));
            items.push(ItemCheck::new("h", "no involution in F_T", true, "vacuous".into()));
        }
        Some(f) => {
            let r = (fld.p as u64).pow(e / 2);
            let ck = centralizer_element(&k_grp, f)?;
            let sub = Field::new(r as usize)?;
            let small_pgl = linear_group(2, &sub, true, false)?;
            let iso = ck.order() <= 512
                && are_isomorphic(&SmallGroup::from_group(&ck)?, &SmallGroup::from_group(&small_pgl)?);
            let res = o2_residue(&ck)?;
            let meet = p.subgroup(p.elements()?.into_iter().filter(|x| res.contains(x)).collect());
            let g_ok = p.gens().iter().all(|g| g.mul(f) == f.mul(g))
                && !p.contains(f)
                && e % 2 == 0
                && ck.order() == small_pgl.order()
                && iso
                && is_family(&meet, Family::Dihedral, p.order() / 2)?;
            items.push(ItemCheck::new(
                "g",
                "P<f> = P x <f>, q is a square, C_K(f) = PGL2(q^(1/2)), P meets O^2(C_K(f)) in a dihedral group of order 2^(k-1)",
                g_ok,
                format!("|C_K(f)| = {}, |P cap O^2| = {}", ck.order(), meet.order()),
            ));
            let mut h_ok = !hs.is_empty();
            for h in &hs {
                let fh = f.mul(h);
                h_ok &= f.comm(h) == z && fh.mul(&fh) == z && is_family(&with(&p, &fh), Family::Semidihedral, 2 * p.order())?;
                let pf = with(&p, f);
                let ph = with(&p, h);
                h_ok &= t_el.iter().filter(|x| x.order() == 2).all(|x| pf.contains(x) || ph.contains(x));
            }
            items.push(ItemCheck::new(
                "h",
                "[f,h] = (fh)^2 = z, P<fh> is semidihedral, involutions of T lie in P, Ph or Pf",
                h_ok,
                String::new(),
            ));
        }
    }
    let holds = items.iter().all(|i| i.holds);
    Ok(OmnibusReport { q, k: kk, items, holds })
}
