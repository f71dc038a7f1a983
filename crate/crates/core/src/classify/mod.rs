//! Checks of the involution-centralizer hypothesis and its conclusion on
//! concrete fusion systems, and the scenario table.

mod lemmas;
mod maxclass;
mod omnibus;
mod table;

pub use lemmas::{automorphism_lemma_check, presentation_lemma_check, PresentationReport};
pub use maxclass::{maxclass_fusion_check, MaxClassCase, MaxClassReport};
pub use omnibus::{l2q_omnibus_check, OmnibusReport};
pub use table::{near_miss_suite, render_table, scenario_verdict, Scenario, ScenarioVerdict};

use serde::Serialize;

use crate::atlas::{linear_group, Field};
use crate::error::{FswError, Result};
use crate::fusion::{centralizer_of_normal_subsystem, focal_hyperfocal, normal_core_op, sylow_cap_derived, FusionSystem, LocalMode};
use crate::group::PermGroup;
use crate::grp::local::{center, centralizer_element};
use crate::grp::normal::{components, normal_closure_of, p_prime_core};
use crate::grp::small::{Bits, SmallGroup};
use crate::ptheory::{dihedral, identify_small, same_2group_type, thompson_data, wreath_c2, Family, TwoGroupLabel};

/// One verified claim.
#[derive(Clone, Debug, Serialize)]
pub struct ItemCheck {
    pub item: String,
    pub claim: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl ItemCheck {
    pub fn new(item: &str, claim: &str, holds: bool, detail: String) -> ItemCheck {
        ItemCheck { item: item.into(), claim: claim.into(), holds, detail }
    }
}

pub(crate) fn label_of(s: &SmallGroup, h: &Bits) -> Result<TwoGroupLabel> {
    identify_small(&SmallGroup::from_group(&s.perm_subgroup(h))?)
}

pub(crate) fn nu2(mut n: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(2) {
        n /= 2;
        v += 1;
    }
    v
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    /// Index of `x` in `S`.
    pub x: usize,
    pub centralizer_in_s: usize,
    pub centralizer_in_g: u128,
    /// Size of the `F`-class of `x` in `S`.
    pub class_size: usize,
    pub in_omega_zj: bool,
    pub has_component: bool,
}

/// One fully centralized representative per `F`-class of involutions with
/// `Baum(S) ≤ C_S(x)`, members of `Ω_1(Z(J(S)))` first.
pub fn candidate_involutions(f: &FusionSystem) -> Result<Vec<Candidate>> {
    if f.prime() != 2 {
        return Err(FswError::Precondition("candidate involutions need p = 2".into()));
    }
    let s = f.small();
    let all = s.all();
    let td = thompson_data(s, &all);
    let zj = s.omega(&s.center(&td.j), 2, 1);
    let mut seen = Bits::empty();
    let mut out = Vec::new();
    for x in s.involutions(&all) {
        if seen.contains(x) {
            continue;
        }
        let cls = f.element_class(x);
        for &y in &cls {
            seen.insert(y);
        }
        let m = cls.iter().map(|&y| f.centralizer_order(y)).max().unwrap();
        let good: Vec<usize> = cls
            .iter()
            .copied()
            .filter(|&y| f.centralizer_order(y) == m && td.baum.is_subset(&s.centralizer(&s.closure(&[y]))))
            .collect();
        let Some(&x) = good.iter().find(|&&y| zj.contains(y)).or(good.first()) else {
            continue;
        };
        let c = centralizer_element(f.ambient(), &s.elements[x])?;
        let has_component = !components(&c)?.is_empty();
        out.push(Candidate {
            x,
            centralizer_in_s: m,
            centralizer_in_g: c.order(),
            class_size: cls.len(),
            in_omega_zj: zj.contains(x),
            has_component,
        });
    }
    out.sort_by_key(|c| (!c.in_omega_zj, c.x));
    Ok(out)
}

/// The candidate used for the headline verdict: among those whose
/// centralizer has a component, the largest `C_S(x)`, then the least index.
pub fn headline(cands: &[Candidate]) -> Option<&Candidate> {
    let pool: Vec<&Candidate> = if cands.iter().any(|c| c.has_component) {
        cands.iter().filter(|c| c.has_component).collect()
    } else {
        cands.iter().collect()
    };
    pool.into_iter().max_by_key(|c| (c.centralizer_in_s, std::cmp::Reverse(c.x)))
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentInfo {
    pub order: u128,
    pub core_order: u128,
    pub quotient_order: u128,
    pub quotient_simple: bool,
    pub sylow: TwoGroupLabel,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub x: usize,
    pub centralizer_order: u128,
    pub t_order: usize,
    pub components: Vec<ComponentInfo>,
    /// Index into `components` of the one with dihedral Sylow subgroup.
    pub chosen: Option<usize>,
    /// Subgroups below are element indices of `S`.
    pub p: Vec<usize>,
    pub k: u32,
    pub z: Option<usize>,
    pub q: Vec<usize>,
    pub q_label: Option<TwoGroupLabel>,
    /// `C_T(K/O_{2'}(K))`, computed directly.
    pub q_direct: Vec<usize>,
    pub q_agrees: bool,
    pub f_elements: Vec<usize>,
}

/// `C = C_G(x)`, its components, `P = T ∩ K`, `Q = C_T(K)` by the bracket
/// condition and directly, and the f-elements.
pub fn component_analysis(f: &FusionSystem, x: usize) -> Result<ComponentReport> {
    let s = f.small();
    if s.elt_order(x) != 2 || !f.element_fully_centralized(x) {
        return Err(FswError::Precondition("x must be a fully centralized involution".into()));
    }
    let xb = s.closure(&[x]);
    let local = f.local_subsystem(LocalMode::Centralizer, &xb)?;
    let cf = &local.system;
    let c = cf.ambient();
    let ts = cf.small();
    let to_s = |b: &Bits| -> Vec<usize> {
        let mut v: Vec<usize> = b.iter().map(|i| s.index_of(&ts.elements[i]).unwrap()).collect();
        v.sort();
        v
    };
    let comps = components(c)?;
    let mut infos = Vec::new();
    let mut chosen = None;
    let mut cores: Vec<PermGroup> = Vec::new();
    for (i, k) in comps.iter().enumerate() {
        let o = p_prime_core(k, 2)?;
        let mut pb = Bits::empty();
        for t in ts.all().iter() {
            if k.contains(&ts.elements[t]) {
                pb.insert(t);
            }
        }
        let sylow = label_of(ts, &pb)?;
        let z = center(k)?;
        if chosen.is_none() && sylow.family == Family::Dihedral && sylow.order >= 8 {
            chosen = Some(i);
        }
        infos.push(ComponentInfo {
            order: k.order(),
            core_order: o.order(),
            quotient_order: k.order() / o.order(),
            quotient_simple: z.order() % 2 == 1,
            sylow,
        });
        cores.push(o);
    }
    let mut rep = ComponentReport {
        x,
        centralizer_order: c.order(),
        t_order: ts.order(),
        components: infos,
        chosen,
        p: Vec::new(),
        k: 0,
        z: None,
        q: Vec::new(),
        q_label: None,
        q_direct: Vec::new(),
        q_agrees: false,
        f_elements: Vec::new(),
    };
    let Some(i) = chosen else {
        return Ok(rep);
    };
    let k = &comps[i];
    let o = &cores[i];
    let mut pb = Bits::empty();
    for t in ts.all().iter() {
        if k.contains(&ts.elements[t]) {
            pb.insert(t);
        }
    }
    // K need not be normal in C
    let kc = normal_closure_of(c, k.gens());
    let q = centralizer_of_normal_subsystem(cf, &kc)?.bits;
    let mut qd = Bits::empty();
    for t in ts.all().iter() {
        let y = &ts.elements[t];
        if k.gens().iter().all(|g| o.contains(&g.inv().mul(&g.conj(y)))) {
            qd.insert(t);
        }
    }
    let zp = ts.center(&pb);
    let z = zp.iter().find(|&e| ts.elt_order(e) == 2);
    let r = ts.extend(&q, &pb.to_vec());
    let cp = ts.centralizer(&pb);
    let f_el: Vec<usize> = ts.involutions(&cp).into_iter().filter(|&e| !r.contains(e)).collect();
    rep.p = to_s(&pb);
    rep.k = pb.len().trailing_zeros();
    rep.z = z.map(|e| s.index_of(&ts.elements[e]).unwrap());
    rep.q = to_s(&q);
    rep.q_label = Some(label_of(ts, &q)?);
    rep.q_direct = to_s(&qd);
    rep.q_agrees = q == qd;
    rep.f_elements = f_el.iter().map(|&e| s.index_of(&ts.elements[e]).unwrap()).collect();
    Ok(rep)
}

#[derive(Clone, Debug, Default, Serialize)]
#[allow(non_snake_case)]
pub struct Verdicts {
    pub K_dihedral: bool,
    pub Q_cyclic: bool,
    pub Baum_in_T: bool,
    pub O2_trivial: bool,
    pub F_perfect: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.K_dihedral && self.Q_cyclic && self.Baum_in_T && self.O2_trivial && self.F_perfect
    }

    /// The first failing item, in the order the hypothesis states them.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.F_perfect, "F_perfect"),
            (self.O2_trivial, "O2_trivial"),
            (self.Baum_in_T, "Baum_in_T"),
            (self.K_dihedral, "K_dihedral"),
            (self.Q_cyclic, "Q_cyclic"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, n)| n)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub s_isotype: TwoGroupLabel,
    pub candidates: Vec<Candidate>,
    pub x: Option<usize>,
    pub component: Option<ComponentReport>,
    pub verdicts: Verdicts,
    pub failed_hypothesis: Option<String>,
    /// `S = S ∩ [G, G]`, independently of the focal computation.
    pub perfect_oracle: bool,
    pub two_rank: u32,
    /// 2-rank 4 exactly when an f-element exists, when a component is present.
    pub rank_dichotomy: Option<bool>,
    pub o2_order: usize,
    pub foc_order: usize,
}

pub fn hmain_check(f: &FusionSystem) -> Result<HypothesisReport> {
    let s = f.small();
    let all = s.all();
    let td = thompson_data(s, &all);
    let cl = focal_hyperfocal(f)?;
    let o2 = normal_core_op(f);
    let cands = candidate_involutions(f)?;
    let mut v = Verdicts { F_perfect: cl.is_perfect, O2_trivial: o2.len() == 1, ..Default::default() };
    let head = headline(&cands).cloned();
    let mut component = None;
    if let Some(c) = &head {
        v.Baum_in_T = td.baum.is_subset(&s.centralizer(&s.closure(&[c.x])));
        let rep = component_analysis(f, c.x)?;
        v.K_dihedral = rep.chosen.is_some();
        v.Q_cyclic = rep.q_label.as_ref().is_some_and(|l| l.family == Family::Cyclic || l.order == 1);
        component = Some(rep);
    }
    let rank_dichotomy = component.as_ref().filter(|c| c.chosen.is_some()).map(|c| {
        let r = td.two_rank;
        (r == 3 || r == 4) && ((r == 4) == !c.f_elements.is_empty())
    });
    let failed = v.first_failure().map(String::from);
    Ok(HypothesisReport {
        s_isotype: identify_small(s)?,
        candidates: cands,
        x: head.map(|c| c.x),
        component,
        failed_hypothesis: failed,
        verdicts: v,
        perfect_oracle: sylow_cap_derived(f).len() == s.order(),
        two_rank: td.two_rank,
        rank_dichotomy,
        o2_order: o2.len(),
        foc_order: cl.foc_order,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConclusionReport {
    pub applicable: bool,
    pub s_isotype: String,
    pub wreath_match: bool,
    pub k: u32,
    pub q1: Option<u64>,
    pub nu2_q1_plus_1: Option<u32>,
    pub relation_holds: bool,
    /// Set when the ambient group has the order of `L_4(q_1)`: whether the
    /// freshly built reference system has the same Alperin data.
    pub reference_match: Option<bool>,
    pub verdict: String,
}

/// Smallest prime power `q ≡ 3 (mod 4)` with `ν_2(q+1) = k-1`.
pub fn smallest_q1(k: u32) -> Option<u64> {
    if k < 3 {
        return None;
    }
    (3u64..100_000).step_by(4).find(|&q| is_prime_power(q) && nu2(q + 1) == k - 1)
}

/// Sorted `(order, |Aut_F|, isotype)` over the Alperin generators.
fn alperin_profile(f: &FusionSystem) -> Result<Vec<(usize, u128, String)>> {
    let mut v = Vec::new();
    for (b, a) in f.alperin_generators() {
        v.push((b.len(), a.order(), label_of(f.small(), &b)?.to_string()));
    }
    v.sort();
    Ok(v)
}

pub fn conclusion_check(f: &FusionSystem, report: &HypothesisReport) -> Result<ConclusionReport> {
    let s_isotype = report.s_isotype.to_string();
    let k = report.component.as_ref().map(|c| c.k).unwrap_or(0);
    if !report.verdicts.all() {
        return Ok(ConclusionReport {
            applicable: false,
            s_isotype,
            wreath_match: false,
            k,
            q1: None,
            nu2_q1_plus_1: None,
            relation_holds: false,
            reference_match: None,
            verdict: "not applicable".into(),
        });
    }
    let model = wreath_c2(&dihedral(k)?);
    let wreath_match = same_2group_type(f.sylow(), &model)?;
    let q1 = smallest_q1(k);
    let nu = q1.map(|q| nu2(q + 1));
    let relation_holds = q1.is_some_and(|q| q % 4 == 3) && nu == Some(k - 1);
    let mut reference_match = None;
    if let Some(q) = q1 {
        let qq = q as u128;
        let order = qq.pow(6) * (qq * qq - 1) * (qq.pow(3) - 1) * (qq.pow(4) - 1) / gcd(4, qq - 1);
        if order == f.ambient().order() {
            let l4 = linear_group(4, &Field::new(q as usize)?, true, true)?;
            let rf = FusionSystem::build(&l4, 2)?;
            reference_match = Some(alperin_profile(&rf)? == alperin_profile(f)? && same_2group_type(rf.sylow(), f.sylow())?);
        }
    }
    let ok = wreath_match && relation_holds && reference_match != Some(false);
    Ok(ConclusionReport {
        applicable: true,
        s_isotype,
        wreath_match,
        k,
        q1,
        nu2_q1_plus_1: nu,
        relation_holds,
        reference_match,
        verdict: if ok { "holds".into() } else { "fails".into() },
    })
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
