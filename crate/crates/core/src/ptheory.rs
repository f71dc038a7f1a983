//! Named 2-groups, products and wreath products, Thompson and Baumann
//! subgroups, isotype recognition and the six-generator presentations.

use std::fmt;

use serde::Serialize;

use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::grp::iso::{automorphism_group, isomorphism, AutGroup};
use crate::grp::normal::quotient_group;
use crate::grp::present::{coset_enumerate, Presentation, COSET_TABLE_CAP};
use crate::grp::small::{Bits, SmallGroup};
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cyclic,
    Dihedral,
    Semidihedral,
    Quaternion,
    Elementary,
    DWrC2,
    QCentralWr,
    SdCentralWr,
    Other,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cyclic" | "c" => Family::Cyclic,
            "dihedral" | "d" => Family::Dihedral,
            "semidihedral" | "sd" => Family::Semidihedral,
            "quaternion" | "q" => Family::Quaternion,
            "elementary" | "e" => Family::Elementary,
            _ => return Err(FswError::Invalid(format!("unknown 2-group family {s:?}"))),
        })
    }
}

/// A recognized 2-group type. For the wreath families `param` is the
/// exponent `n` of the factor of order `2^n`; otherwise it is the exponent
/// of the group order (the rank for elementary groups).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoGroupLabel {
    pub family: Family,
    pub order: u64,
    pub param: u32,
    /// For `Other`: a summary of invariants.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
}

impl fmt::Display for TwoGroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order;
        let m = 1u64 << self.param;
        match self.family {
            Family::Cyclic => write!(f, "C{n}"),
            Family::Dihedral if n == 4 => write!(f, "C2 x C2"),
            Family::Dihedral => write!(f, "D{n}"),
            Family::Semidihedral => write!(f, "SD{n}"),
            Family::Quaternion => write!(f, "Q{n}"),
            Family::Elementary => write!(f, "C2^{}", self.param),
            Family::DWrC2 => write!(f, "D{m} wr C2"),
            Family::QCentralWr => write!(f, "Q{m} wr* C2"),
            Family::SdCentralWr => write!(f, "SD{m} wr* C2"),
            Family::Other => write!(f, "other of order {n} ({})", self.summary.as_deref().unwrap_or("")),
        }
    }
}

fn log2(n: u64) -> Option<u32> {
    if n.is_power_of_two() {
        Some(n.trailing_zeros())
    } else {
        None
    }
}

fn cycle(points: &[usize], degree: usize) -> Perm {
    let mut img: Vec<usize> = (0..degree).collect();
    for i in 0..points.len() {
        img[points[i]] = points[(i + 1) % points.len()];
    }
    Perm::from_images(img).unwrap()
}

fn affine(m: usize, mult: usize, add: usize) -> Perm {
    Perm::from_images((0..m).map(|x| (x * mult + add) % m).collect()).unwrap()
}

/// The cyclic group of order `n` in its regular action.
pub fn cyclic(n: usize) -> PermGroup {
    let pts: Vec<usize> = (0..n).collect();
    if n == 1 {
        return PermGroup::trivial(1);
    }
    PermGroup::with_order(n, vec![cycle(&pts, n)], n as u128)
}

/// Dihedral group of order `2^n` (`n ≥ 2`) on `2^{n-1}` points; the Klein
/// four-group when `n = 2`.
pub fn dihedral(n: u32) -> Result<PermGroup> {
    if n < 2 {
        return Err(FswError::Invalid("dihedral 2-groups need order at least 4".into()));
    }
    if n == 2 {
        return Ok(elementary(2));
    }
    let m = 1usize << (n - 1);
    let r = affine(m, 1, 1);
    let s = affine(m, m - 1, 0);
    Ok(PermGroup::with_order(m, vec![r, s], 1u128 << n))
}

/// Semidihedral group of order `2^n` (`n ≥ 4`) acting on `Z/2^{n-1}`.
pub fn semidihedral(n: u32) -> Result<PermGroup> {
    if n < 4 {
        return Err(FswError::Invalid("semidihedral groups need order at least 16".into()));
    }
    let m = 1usize << (n - 1);
    let r = affine(m, 1, 1);
    let s = affine(m, m / 2 - 1, 0);
    Ok(PermGroup::with_order(m, vec![r, s], 1u128 << n))
}

/// Generalized quaternion group of order `2^n` (`n ≥ 3`), regular action.
pub fn quaternion(n: u32) -> Result<PermGroup> {
    if n < 3 {
        return Err(FswError::Invalid("quaternion groups need order at least 8".into()));
    }
    let m = 1i64 << (n - 1);
    let pres = Presentation::parse(&format!("gens: x y\nrels: x^{m}, y^2 = x^{}, y^-1 x y = x^-1", m / 2))?;
    let e = coset_enumerate(&pres, COSET_TABLE_CAP)?;
    Ok(e.group(true))
}

/// Elementary abelian group of rank `r` on `2r` points.
pub fn elementary(r: u32) -> PermGroup {
    let n = 2 * r as usize;
    if r == 0 {
        return PermGroup::trivial(1);
    }
    let gens = (0..r as usize).map(|i| cycle(&[2 * i, 2 * i + 1], n)).collect();
    PermGroup::with_order(n, gens, 1u128 << r)
}

/// `named_2group(family, order)`.
pub fn named_2group(family: Family, order: u64) -> Result<PermGroup> {
    let n = log2(order).ok_or_else(|| FswError::Invalid(format!("{order} is not a power of 2")))?;
    match family {
        Family::Cyclic => Ok(cyclic(order as usize)),
        Family::Dihedral => dihedral(n),
        Family::Semidihedral => semidihedral(n),
        Family::Quaternion => quaternion(n),
        Family::Elementary => Ok(elementary(n)),
        _ => Err(FswError::Invalid("use combine() for product families".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineMode {
    Direct,
    WreathC2,
    CentralWreathC2,
}

impl CombineMode {
    pub fn parse(s: &str) -> Result<CombineMode> {
        Ok(match s {
            "direct" => CombineMode::Direct,
            "wreath_c2" | "wreath" => CombineMode::WreathC2,
            "central_wreath_c2" | "central_wreath" => CombineMode::CentralWreathC2,
            _ => return Err(FswError::Invalid(format!("unknown combine mode {s:?}"))),
        })
    }
}

/// `A × B` on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree() + b.degree();
    let mut gens: Vec<Perm> = a.gens().iter().map(|g| g.extend(n)).collect();
    gens.extend(b.gens().iter().map(|g| g.shift(a.degree(), n)));
    PermGroup::with_order(n, gens, a.order() * b.order())
}

/// `P wr C2` in its imprimitive action on two copies of the points.
pub fn wreath_c2(p: &PermGroup) -> PermGroup {
    let m = p.degree();
    let n = 2 * m;
    let mut gens: Vec<Perm> = p.gens().iter().map(|g| g.extend(n)).collect();
    let swap = Perm::from_images((0..n).map(|i| (i + m) % n).collect()).unwrap();
    gens.push(swap);
    let o = p.order();
    PermGroup::with_order(n, gens, o * o * 2)
}

pub fn combine(mode: CombineMode, p: &PermGroup) -> Result<PermGroup> {
    match mode {
        CombineMode::Direct => Ok(direct_product(p, p)),
        CombineMode::WreathC2 => Ok(wreath_c2(p)),
        CombineMode::CentralWreathC2 => {
            let z = crate::grp::local::center(p)?;
            if z.order() != 2 {
                return Err(FswError::Precondition("central wreath product needs |Z(P)| = 2".into()));
            }
            let w = wreath_c2(p);
            let zw = crate::grp::local::center(&w)?;
            let q = quotient_group(&w, &zw)?;
            Ok(q.group)
        }
    }
}

/// `Ω_n(P)` or `℧^n(P)` as a permutation group.
pub fn omega_agemo(p: &PermGroup, omega: bool, n: u32) -> Result<PermGroup> {
    let s = SmallGroup::from_group(p)?;
    let b = if omega { s.omega(&s.all(), 2, n) } else { s.agemo(&s.all(), 2, n) };
    Ok(s.perm_subgroup(&b))
}

/// Elementary abelian subgroups of `h` (including the trivial one).
pub fn elementary_abelian_subgroups(g: &SmallGroup, h: &Bits) -> Vec<Bits> {
    let invols: Vec<usize> = g.involutions(h);
    let mut all: Vec<Bits> = vec![g.trivial()];
    let mut seen: std::collections::HashSet<Bits> = all.iter().copied().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for e in &layer {
            for &x in &invols {
                if e.contains(x) || e.iter().any(|y| g.mul(x, y) != g.mul(y, x)) {
                    continue;
                }
                let f = g.extend(e, &[x]);
                if seen.insert(f) {
                    next.push(f);
                }
            }
        }
        all.extend(next.iter().copied());
        layer = next;
    }
    all
}

#[derive(Clone, Debug)]
pub struct ThompsonData {
    pub j: Bits,
    pub baum: Bits,
    pub two_rank: u32,
    pub max_elab: Vec<Bits>,
}

/// Thompson subgroup `J(P)`, Baumann subgroup `C_P(Ω₁(Z(J(P))))`, 2-rank.
pub fn thompson_data(g: &SmallGroup, p: &Bits) -> ThompsonData {
    let elabs = elementary_abelian_subgroups(g, p);
    let max = elabs.iter().map(|e| e.len()).max().unwrap_or(1);
    let mut max_elab: Vec<Bits> = elabs.into_iter().filter(|e| e.len() == max).collect();
    max_elab.sort();
    let gens: Vec<usize> = max_elab.iter().flat_map(|e| e.to_vec()).collect();
    let j = g.closure(&gens);
    let zj = g.center(&j);
    let om = g.omega(&zj, 2, 1);
    let baum = g.centralizer(&om).and(p);
    ThompsonData { j, baum, two_rank: max.trailing_zeros(), max_elab }
}

/// Candidate models for isotype recognition at a given order.
fn candidates(order: u64) -> Vec<(TwoGroupLabel, PermGroup)> {
    let Some(n) = log2(order) else { return Vec::new() };
    let lbl = |family, param| TwoGroupLabel { family, order, param, summary: None };
    let mut out = Vec::new();
    out.push((lbl(Family::Cyclic, n), cyclic(order as usize)));
    if n >= 1 {
        out.push((lbl(Family::Elementary, n), elementary(n)));
    }
    if n >= 3 {
        out.push((lbl(Family::Dihedral, n), dihedral(n).unwrap()));
        out.push((lbl(Family::Quaternion, n), quaternion(n).unwrap()));
    }
    if n >= 4 {
        out.push((lbl(Family::Semidihedral, n), semidihedral(n).unwrap()));
    }
    // D_{2^m} wr C2 has order 2^{2m+1}
    if n >= 5 && n % 2 == 1 {
        let m = (n - 1) / 2;
        out.push((lbl(Family::DWrC2, m), wreath_c2(&dihedral(m).unwrap())));
    }
    // Q_{2^m} wr* C2 and SD_{2^m} wr* C2 have order 2^{2m}
    if n >= 6 && n % 2 == 0 && n <= 10 {
        let m = n / 2;
        if let Ok(g) = combine(CombineMode::CentralWreathC2, &quaternion(m).unwrap()) {
            out.push((lbl(Family::QCentralWr, m), g));
        }
        if m >= 4 {
            if let Ok(g) = combine(CombineMode::CentralWreathC2, &semidihedral(m).unwrap()) {
                out.push((lbl(Family::SdCentralWr, m), g));
            }
        }
    }
    out
}

/// Recognizes the named families by explicit isomorphism to a model.
pub fn identify_isotype(p: &PermGroup) -> Result<TwoGroupLabel> {
    let order = p.order();
    if !(order as u64).is_power_of_two() {
        return Err(FswError::Precondition("not a 2-group".into()));
    }
    let s = SmallGroup::from_group(p)?;
    identify_small(&s)
}

pub fn identify_small(s: &SmallGroup) -> Result<TwoGroupLabel> {
    let order = s.order() as u64;
    if order == 4 && !s.all().iter().any(|x| s.elt_order(x) == 4) {
        return Ok(TwoGroupLabel { family: Family::Elementary, order, param: 2, summary: None });
    }
    for (label, model) in candidates(order) {
        if model.order() != order as u128 {
            continue;
        }
        let m = SmallGroup::from_group(&model)?;
        if isomorphism(s, &m).is_some() {
            return Ok(label);
        }
    }
    let all = s.all();
    let td = thompson_data(s, &all);
    let exp = all.iter().map(|x| s.elt_order(x)).max().unwrap_or(1);
    let summary = format!(
        "exponent {exp}, {} involutions, |Z| = {}, |G'| = {}, 2-rank {}",
        s.involutions(&all).len(),
        s.center(&all).len(),
        s.derived(&all).len(),
        td.two_rank
    );
    Ok(TwoGroupLabel { family: Family::Other, order, param: order.trailing_zeros(), summary: Some(summary) })
}

pub fn same_2group_type(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let sa = SmallGroup::from_group(a)?;
    let sb = SmallGroup::from_group(b)?;
    Ok(isomorphism(&sa, &sb).is_some())
}

pub fn automorphisms(p: &PermGroup) -> Result<AutGroup> {
    let s = SmallGroup::from_group(p)?;
    automorphism_group(&s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `h² = 1`
    HSquared1,
    /// `h² = d d^{2^{k-2}} c^{2^{k-2}}`
    HSquaredQ,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "h_squared_1" | "h2=1" => Ok(Variant::HSquared1),
            "h_squared_Q" | "h_squared_q" | "h2=Q" => Ok(Variant::HSquaredQ),
            _ => Err(FswError::Invalid(format!("unknown variant {s:?}"))),
        }
    }
}

/// Number of relators printed in each six-generator presentation.
pub const PRINTED_RELATORS: usize = 14;

/// The six-generator presentation on `d c f e h a` for parameter `k ≥ 3`.
///
/// The printed relators come first. The last relator `[c,f]` encodes
/// `[P, P^a] = 1` for `P = ⟨c,e⟩`, which the surrounding notation fixes;
/// without it the group is four times too large.
pub fn lemma_presentation(k: u32, variant: Variant) -> Result<Presentation> {
    if k < 3 {
        return Err(FswError::Invalid("k must be at least 3".into()));
    }
    let n = 1i64 << (k - 1);
    let m = 1i64 << (k - 2);
    let mut rels = vec![
        format!("d^{n}"),
        format!("c^{n}"),
        "f^2".into(),
        "e^2".into(),
        "a^2".into(),
        "[d,c]".into(),
        "[f,e]".into(),
        "d^f = d^-1".into(),
        "c^e = c^-1".into(),
        "c^a = d".into(),
        "e^a = f".into(),
    ];
    match variant {
        Variant::HSquared1 => rels.extend(["h^2".into(), "e^h = e c".into(), "h^a = h".into()]),
        Variant::HSquaredQ => {
            rels.extend([format!("h^2 = d d^{m} c^{m}"), "e^h = e c".into(), "h^a = f e h".into()])
        }
    }
    rels.push("[c,f]".into());
    let refs: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    Presentation::new(&["d", "c", "f", "e", "h", "a"], &refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(g: &PermGroup) -> SmallGroup {
        SmallGroup::from_group(g).unwrap()
    }

    #[test]
    fn named_orders_and_involutions() {
        for n in 2..=6 {
            let d = dihedral(n).unwrap();
            assert_eq!(d.order(), 1 << n);
            let s = small(&d);
            assert_eq!(s.involutions(&s.all()).len(), (1 << (n - 1)) + 1);
        }
        for n in 3..=6 {
            let q = small(&quaternion(n).unwrap());
            assert_eq!(q.order(), 1 << n);
            assert_eq!(q.involutions(&q.all()).len(), 1);
        }
        for n in 4..=6 {
            let sd = small(&semidihedral(n).unwrap());
            assert_eq!(sd.order(), 1 << n);
            assert_eq!(sd.involutions(&sd.all()).len(), (1 << (n - 2)) + 1);
        }
        assert_eq!(cyclic(2).order(), 2);
    }

    #[test]
    fn combine_orders() {
        let d8 = dihedral(3).unwrap();
        assert_eq!(combine(CombineMode::WreathC2, &d8).unwrap().order(), 128);
        let q16 = quaternion(4).unwrap();
        assert_eq!(combine(CombineMode::CentralWreathC2, &q16).unwrap().order(), 256);
        let v = combine(CombineMode::Direct, &cyclic(2)).unwrap();
        assert_eq!(identify_isotype(&v).unwrap().to_string(), "C2^2");
        assert!(combine(CombineMode::CentralWreathC2, &elementary(2)).is_err());
    }

    #[test]
    fn thompson_of_small_groups() {
        let q8 = small(&quaternion(3).unwrap());
        let t = thompson_data(&q8, &q8.all());
        assert_eq!(t.two_rank, 1);
        assert_eq!(t.j.len(), 2);
        assert_eq!(t.baum.len(), 8);
        let e = small(&elementary(4));
        let t = thompson_data(&e, &e.all());
        assert_eq!((t.j.len(), t.baum.len(), t.two_rank), (16, 16, 4));
    }

    #[test]
    fn presentation_relator_count() {
        for v in [Variant::HSquared1, Variant::HSquaredQ] {
            assert_eq!(lemma_presentation(3, v).unwrap().relators.len(), PRINTED_RELATORS + 1);
        }
        assert!(lemma_presentation(2, Variant::HSquared1).is_err());
    }
}
