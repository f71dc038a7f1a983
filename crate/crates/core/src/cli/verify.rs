//! The desk acceptance suite, one function per criterion.

use std::collections::HashSet;
use std::time::Instant;

use serde::Serialize;

use crate::atlas::atlas_lookup;
use crate::classify::{
    automorphism_lemma_check, conclusion_check, hmain_check, l2q_omnibus_check, maxclass_fusion_check,
    presentation_lemma_check,
};
use crate::error::Result;
use crate::fusion::{
    burnside_check, focal_hyperfocal, saturation_check, sylow_cap_derived, transfer_check, FusionSystem, TransferMode,
};
use crate::group::PermGroup;
use crate::grp::local::{centralizer_element, normalizer};
use crate::grp::small::{Bits, SmallGroup};
use crate::perm::Perm;
use crate::ptheory::{
    combine, cyclic, dihedral, direct_product, elementary, quaternion, same_2group_type, semidihedral, CombineMode,
    Family, Variant,
};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const CRITERIA: [(u32, &str); 9] = [
    (1, "automorphism lemmas"),
    (2, "maximal-class fusion"),
    (3, "L2(9) omnibus"),
    (4, "A10 near miss"),
    (5, "PSL(4,3) instance"),
    (6, "wreath presentations"),
    (7, "transfer and Burnside"),
    (8, "closure laws and quotients"),
    (9, "negative control and brute-force oracles"),
];

/// Perfect and non-perfect group-backed systems used across criteria.
pub const CORPUS: &[&str] = &["S4", "PSL2_7", "A6", "SL2_7", "PGL2_9", "PSL3_3", "PSL2_17"];

/// Corpus members of order at most 5000.
pub const SMALL_CORPUS: &[&str] = &["S4", "PSL2_7", "A6", "PSL2_9", "SL2_7", "PGL2_9", "SL2_9", "PGammaL2_9", "PSL2_17"];

fn system(name: &str) -> Result<FusionSystem> {
    FusionSystem::build(&atlas_lookup(name)?, 2)
}

pub fn run_criterion(id: u32) -> CriterionResult {
    let name = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).unwrap_or("unknown");
    let t = Instant::now();
    let out = match id {
        1 => c1(),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(),
        6 => c6(),
        7 => c7(),
        8 => c8(),
        9 => c9(),
        _ => Ok((false, "no such criterion".into())),
    };
    let (passed, detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name: name.into(), passed, detail, seconds: t.elapsed().as_secs_f64() }
}

/// All criteria, spread over `jobs` threads.
pub fn desk_suite(jobs: usize) -> Vec<CriterionResult> {
    let ids: Vec<u32> = CRITERIA.iter().map(|c| c.0).collect();
    let mut out: Vec<CriterionResult> = if jobs <= 1 {
        ids.iter().map(|&i| run_criterion(i)).collect()
    } else {
        let chunks: Vec<Vec<u32>> = (0..jobs).map(|j| ids.iter().copied().skip(j).step_by(jobs).collect()).collect();
        std::thread::scope(|sc| {
            let hs: Vec<_> = chunks
                .into_iter()
                .map(|c| sc.spawn(move || c.into_iter().map(run_criterion).collect::<Vec<_>>()))
                .collect();
            hs.into_iter().flat_map(|h| h.join().unwrap()).collect()
        })
    };
    out.sort_by_key(|r| r.id);
    out
}

fn c1() -> Result<(bool, String)> {
    let items = automorphism_lemma_check()?;
    let bad: Vec<&str> = items.iter().filter(|i| !i.holds).map(|i| i.item.as_str()).collect();
    Ok((bad.is_empty(), format!("{} groups checked; failing: {bad:?}", items.len())))
}

fn c2() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, q) in [("PSL2_7", 7), ("PSL2_17", 17), ("SL2_7", 7), ("PSL3_3", 3)] {
        let f = system(name)?;
        let sat = saturation_check(&f)?.saturated;
        let perfect = focal_hyperfocal(&f)?.is_perfect;
        let r = maxclass_fusion_check(&f, Some(q))?;
        ok &= sat && perfect && r.holds;
        notes.push(format!("{name}: {} {}", r.s_isotype, if r.holds { "ok" } else { "FAIL" }));
    }
    Ok((ok, notes.join(", ")))
}

fn c3() -> Result<(bool, String)> {
    let r = l2q_omnibus_check(9)?;
    let g = r.items.iter().find(|i| i.item == "g").map(|i| i.detail.clone()).unwrap_or_default();
    let ok = r.holds && r.items.len() == 8 && g.contains("|C_K(f)| = 24");
    Ok((ok, format!("k = {}, {} items, {g}", r.k, r.items.len())))
}

fn c4() -> Result<(bool, String)> {
    let f = system("A10")?;
    let r = hmain_check(&f)?;
    let c = r.component.as_ref();
    let x_ok = r.x.is_some_and(|x| f.small().elements[x].support().len() == 4);
    let k_ok = c.is_some_and(|c| {
        c.chosen.is_some_and(|i| c.components[i].quotient_order == 360 && c.components[i].sylow.to_string() == "D8")
    });
    let q = c.and_then(|c| c.q_label.clone());
    let q_ok = q.as_ref().is_some_and(|l| l.order == 4 && l.family != Family::Cyclic) && c.is_some_and(|c| c.q_agrees);
    let v = &r.verdicts;
    let ok = r.s_isotype.to_string() == "D8 wr C2"
        && x_ok
        && k_ok
        && q_ok
        && !v.Q_cyclic
        && v.F_perfect
        && v.O2_trivial
        && v.Baum_in_T
        && v.K_dihedral
        && r.failed_hypothesis.as_deref() == Some("Q_cyclic");
    Ok((ok, format!("S = {}, Q = {}, failed {:?}", r.s_isotype, q.map(|l| l.to_string()).unwrap_or_default(), r.failed_hypothesis)))
}

fn c5() -> Result<(bool, String)> {
    let f = system("PSL4_3")?;
    let r = hmain_check(&f)?;
    let Some(c) = r.component.as_ref() else {
        return Ok((false, "no component".into()));
    };
    let k_ok = c.chosen.is_some_and(|i| {
        let k = &c.components[i];
        k.quotient_order == 360 && k.quotient_simple && k.sylow.to_string() == "D8"
    });
    let q_ok = c.q_label.as_ref().is_some_and(|l| l.family == Family::Cyclic && l.order == 4) && c.q_agrees;
    let concl = conclusion_check(&f, &r)?;
    let ok = r.o2_order == 1
        && r.verdicts.F_perfect
        && r.verdicts.all()
        && k_ok
        && q_ok
        && concl.wreath_match
        && concl.k == 3
        && concl.q1 == Some(3)
        && concl.nu2_q1_plus_1 == Some(2)
        && concl.verdict == "holds";
    Ok((ok, format!("S = {}, k = {}, q1 = {:?}, reference match {:?}", concl.s_isotype, concl.k, concl.q1, concl.reference_match)))
}

fn c6() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (v, iso, items) in [
        (Variant::HSquared1, "Q16 wr* C2", ["b", "d", "e", "h", "i"]),
        (Variant::HSquaredQ, "SD16 wr* C2", ["b", "c", "e", "h", "i"]),
    ] {
        let r = presentation_lemma_check(3, v)?;
        let named = items.iter().all(|n| r.items.iter().any(|i| i.item == *n && i.holds));
        ok &= r.order == 256 && r.isotype == iso && named && r.holds;
        let refuted: Vec<String> = r.as_printed.iter().filter(|i| !i.holds).map(|i| format!("({})", i.item)).collect();
        notes.push(format!("{}: {} of order {}, printed {} corrected", r.variant, r.isotype, r.order, refuted.join("")));
    }
    Ok((ok, notes.join("; ")))
}

fn cyclic_quotient(s: &SmallGroup, t: &Bits) -> bool {
    let idx = s.order() / t.len();
    let (q, _) = s.quotient(&s.all(), t);
    (0..q.order()).any(|x| q.elt_order(x) as usize == idx)
}

fn c7() -> Result<(bool, String)> {
    let mut ok = true;
    let mut pairs = 0;
    let mut systems = 0;
    for name in CORPUS {
        let f = system(name)?;
        let s = f.small();
        ok &= burnside_check(&f, None)?.holds;
        if !focal_hyperfocal(&f)?.is_perfect {
            continue;
        }
        systems += 1;
        for t in f.normal_subgroups_of_s() {
            if t.len() == s.order() || !cyclic_quotient(s, &t) {
                continue;
            }
            ok &= transfer_check(&f, &t, TransferMode::Cyclic)?.conclusion;
            pairs += 1;
        }
    }
    Ok((ok && pairs > 0, format!("{pairs} (system, T) pairs over {systems} perfect systems; Burnside on {}", CORPUS.len())))
}

/// 2-groups of order at most 2^7 whose systems `F_S(S)` are checked.
pub fn small_two_groups() -> Result<Vec<(String, PermGroup)>> {
    let d8 = dihedral(3)?;
    let q8 = quaternion(3)?;
    Ok(vec![
        ("D8".into(), d8.clone()),
        ("Q8".into(), q8.clone()),
        ("C2^3".into(), elementary(3)),
        ("C4 x C4".into(), direct_product(&cyclic(4), &cyclic(4))),
        ("D16".into(), dihedral(4)?),
        ("SD16".into(), semidihedral(4)?),
        ("Q16".into(), quaternion(4)?),
        ("D8 x C2".into(), direct_product(&d8, &cyclic(2))),
        ("Q8 x C2".into(), direct_product(&q8, &cyclic(2))),
        ("D32".into(), dihedral(5)?),
        ("SD32".into(), semidihedral(5)?),
        ("D8 x D8".into(), direct_product(&d8, &d8)),
        ("Q8 wr* C2".into(), combine(CombineMode::CentralWreathC2, &q8)?),
        ("D8 wr C2".into(), combine(CombineMode::WreathC2, &d8)?),
    ])
}

/// `(F/T1)/(T2/T1)` against `F/T2` for every pair of strongly closed
/// `T1 < T2`; returns (pairs, agreements).
pub fn double_quotients(f: &FusionSystem) -> Result<(usize, usize)> {
    let closed: Vec<Bits> = f.normal_subgroups_of_s().into_iter().filter(|t| f.is_strongly_closed(t)).collect();
    let mut pairs = 0;
    let mut agree = 0;
    for t1 in closed.iter().filter(|t| t.len() > 1) {
        let q1 = f.quotient_system(t1)?;
        let Some(f1) = q1.system.as_ref() else { continue };
        for t2 in closed.iter().filter(|t| t.len() > t1.len() && t1.is_subset(t)) {
            let mut t2bar = Bits::empty();
            for x in t2.iter() {
                t2bar.insert(q1.projection[x]);
            }
            let once = f.quotient_system(t2)?;
            let twice = f1.quotient_system(&t2bar)?;
            pairs += 1;
            if let (Some(a), Some(b)) = (once.system.as_ref(), twice.system.as_ref()) {
                if same_2group_type(a.sylow(), b.sylow())? && a.fclasses().len() == b.fclasses().len() {
                    agree += 1;
                }
            }
        }
    }
    Ok((pairs, agree))
}

fn c8() -> Result<(bool, String)> {
    let mut ok = true;
    for name in CORPUS {
        let f = system(name)?;
        let cl = focal_hyperfocal(&f)?;
        ok &= cl.hyp_bits.is_subset(&cl.foc_bits);
        ok &= cl.foc_bits == sylow_cap_derived(&f);
        if cyclic_quotient(f.small(), &cl.foc_bits) {
            ok &= cl.foc_bits == cl.hyp_bits;
        }
    }
    let mut pairs = 0;
    let mut agree = 0;
    for (_, g) in small_two_groups()? {
        let f = FusionSystem::build(&g, 2)?;
        let cl = focal_hyperfocal(&f)?;
        ok &= cl.hyp_bits.is_subset(&cl.foc_bits);
        let (p, a) = double_quotients(&f)?;
        pairs += p;
        agree += a;
    }
    ok &= pairs == agree && pairs > 0;
    Ok((ok, format!("{agree}/{pairs} nested quotient pairs agree")))
}

/// Brute-force subgroup count of a small group: every subgroup is reached
/// by adjoining one element at a time.
pub fn brute_subgroup_count(s: &SmallGroup) -> usize {
    let mut seen: HashSet<Bits> = HashSet::new();
    let start = s.closure(&[]);
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(h) = stack.pop() {
        for x in 0..s.order() {
            if h.contains(x) {
                continue;
            }
            let k = s.extend(&h, &[x]);
            if seen.insert(k) {
                stack.push(k);
            }
        }
    }
    seen.len()
}

fn brute_centralizer(els: &[Perm], x: &Perm) -> usize {
    els.iter().filter(|g| g.mul(x) == x.mul(g)).count()
}

fn brute_normalizer(els: &[Perm], s: &PermGroup) -> usize {
    els.iter().filter(|g| s.gens().iter().all(|y| s.contains(&y.conj(g)))).count()
}

fn c9() -> Result<(bool, String)> {
    // mutation
    let base = system("PSL2_7")?;
    let mut named = false;
    for c in base.fcr_classes() {
        if base.fclasses()[c].positions.len() != 4 {
            continue;
        }
        for k in 0..base.fclasses()[c].aut().gens().len() {
            let mut f = system("PSL2_7")?;
            f.mutate_delete_aut_generator(c, k)?;
            let r = saturation_check(&f)?;
            if f.fclasses()[c].aut().order() % 2 == 1 && !r.saturated && !r.violations.is_empty() {
                named = true;
            }
        }
    }
    // oracles
    let mut ok = named;
    let mut checked = 0;
    for name in SMALL_CORPUS {
        let g = atlas_lookup(name)?;
        let els = g.elements()?;
        ok &= els.len() as u128 == g.order();
        let f = FusionSystem::build(&g, 2)?;
        let s = f.sylow();
        for x in s.gens().iter().chain(g.gens()) {
            ok &= centralizer_element(&g, x)?.order() == brute_centralizer(&els, x) as u128;
        }
        ok &= normalizer(&g, s)?.order() == brute_normalizer(&els, s) as u128;
        let table_count: usize = f.table().classes.iter().map(|c| c.size).sum();
        ok &= table_count == brute_subgroup_count(f.small());
        checked += 1;
    }
    Ok((ok, format!("mutation rejected with a named axiom: {named}; {checked} groups against brute force")))
}
