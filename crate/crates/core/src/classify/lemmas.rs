//! Automorphism groups of the small dihedral-type 2-groups, and the item
//! lists attached to the two six-generator presentations.

use serde::Serialize;

use super::{label_of, ItemCheck};
use crate::error::{FswError, Result};
use crate::grp::present::{coset_enumerate, Presentation, COSET_TABLE_CAP};
use crate::grp::small::{Bits, SmallGroup};
use crate::perm::Perm;
use crate::ptheory::{
    automorphisms, combine, dihedral, direct_product, elementary, identify_small, lemma_presentation, quaternion,
    semidihedral, wreath_c2, CombineMode, Family, TwoGroupLabel, Variant,
};

/// `Out(D_{2^{k+1}}) ≅ C_2 × C_{2^{k-2}}` for `k = 2, 3, 4`, and `Aut` a
/// 2-group for the listed families at `k = 3` and `k = 4`.
pub fn automorphism_lemma_check() -> Result<Vec<ItemCheck>> {
    let mut out = Vec::new();
    for k in 2..=4u32 {
        let d = dihedral(k + 1)?;
        let a = automorphisms(&d)?;
        let want = 1u128 << (k - 1);
        let og = a.out_group()?;
        let all = og.all();
        let exp = all.iter().map(|x| og.elt_order(x) as u128).max().unwrap_or(1);
        // abelian of order 2^{k-1} and exponent max(2, 2^{k-2}) forces C2 × C_{2^{k-2}}
        let abelian = og.is_abelian(&all);
        let holds = a.out_order() == want && abelian && exp == (1u128 << (k - 2)).max(2);
        out.push(ItemCheck::new(
            &format!("out(D{})", 1u32 << (k + 1)),
            &format!("Out(D_{}) ≅ C2 × C{}", 1u32 << (k + 1), 1u32 << (k - 2)),
            holds,
            format!("|Out| = {}, exponent {exp}, abelian {abelian}", a.out_order()),
        ));
    }
    for k in [3u32, 4] {
        let n = 1u32 << k;
        let groups = vec![
            (format!("Q{}", 2 * n), quaternion(k + 1)?),
            (format!("SD{}", 2 * n), semidihedral(k + 1)?),
            (format!("C2 x D{n}"), direct_product(&elementary(1), &dihedral(k)?)),
            (format!("D{n} x D{n}"), direct_product(&dihedral(k)?, &dihedral(k)?)),
            (format!("D{n} wr C2"), wreath_c2(&dihedral(k)?)),
        ];
        for (name, g) in groups {
            let a = automorphisms(&g)?;
            out.push(ItemCheck::new(
                &format!("aut({name})"),
                &format!("Aut({name}) is a 2-group"),
                a.order.is_power_of_two(),
                format!("|Aut| = {}", a.order),
            ));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub k: u32,
    pub variant: String,
    pub order: usize,
    pub isotype: String,
    /// Isotype of `Q<h>`.
    pub q_h: TwoGroupLabel,
    pub items: Vec<ItemCheck>,
    /// Printed forms of claims replaced in `items` by a corrected form.
    pub as_printed: Vec<ItemCheck>,
    pub holds: bool,
}

fn failing(parts: &[(&str, bool)]) -> String {
    let bad: Vec<&str> = parts.iter().filter(|p| !p.1).map(|p| p.0).collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("; fails: {}", bad.join(", "))
    }
}

/// Named elements of the presented group, as indices of a small group.
struct Ctx {
    s: SmallGroup,
    pres: Presentation,
    gens: Vec<Perm>,
}

impl Ctx {
    fn el(&self, w: &str) -> Result<usize> {
        let word = self.pres.parse_word(w)?;
        let p = self.pres.evaluate(&word, &self.gens);
        self.s.index_of(&p).ok_or_else(|| FswError::Precondition(format!("word {w} outside the group")))
    }

    fn sub(&self, ws: &[&str]) -> Result<Bits> {
        let v: Vec<usize> = ws.iter().map(|w| self.el(w)).collect::<Result<_>>()?;
        Ok(self.s.closure(&v))
    }

    fn coset(&self, h: &Bits, x: usize) -> Vec<usize> {
        h.iter().map(|y| self.s.mul(y, x)).collect()
    }

    /// Orbit of `x` under conjugation by `h`.
    fn orbit(&self, x: usize, h: &Bits) -> Bits {
        let gens = self.s.generating_set(h);
        let mut seen = Bits::singleton(x);
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            for &g in &gens {
                let z = self.s.conj(y, g);
                if !seen.contains(z) {
                    seen.insert(z);
                    queue.push(z);
                }
            }
        }
        seen
    }

    fn all_conjugate(&self, xs: &[usize], h: &Bits) -> bool {
        xs.first().is_none_or(|&x| {
            let o = self.orbit(x, h);
            xs.iter().all(|&y| o.contains(y))
        })
    }

    fn family_is(&self, h: &Bits, fam: Family, order: usize) -> Result<bool> {
        let l = label_of(&self.s, h)?;
        Ok(l.family == fam && l.order as usize == order)
    }

    /// `C_S(u) = ⟨u⟩ × B`.
    fn splits_centralizer(&self, u: usize, b: &Bits) -> bool {
        let s = &self.s;
        let c = s.centralizer(&s.closure(&[u]));
        s.elt_order(u) == 2 && !b.contains(u) && b.is_subset(&c) && s.extend(b, &[u]) == c
    }

    fn commute(&self, a: &Bits, b: &Bits) -> bool {
        a.iter().all(|x| b.iter().all(|y| self.s.comm(x, y) == 0))
    }
}

pub fn presentation_lemma_check(k: u32, variant: Variant) -> Result<PresentationReport> {
    let pres = lemma_presentation(k, variant)?;
    let en = coset_enumerate(&pres, COSET_TABLE_CAP)?;
    let g = en.group(true);
    let s = SmallGroup::from_group(&g)?;
    let cx = Ctx { s, pres, gens: en.generators.clone() };
    let s = &cx.s;
    let m = 1i64 << (k - 2);
    let all = s.all();
    let big = 1usize << (k + 1);
    let j = cx.sub(&["c", "e", "d", "f"])?;
    let j0 = cx.sub(&["d", "c"])?;
    let p = cx.sub(&["c", "e"])?;
    let t = cx.sub(&["d", "c", "f", "e", "h"])?;
    let x = cx.el(&format!("d^{m}"))?;
    let z = cx.el(&format!("c^{m}"))?;
    let xz = s.mul(x, z);
    let (h, a, f) = (cx.el("h")?, cx.el("a")?, cx.el("f")?);
    let ffa = cx.el("f f^a")?;
    let mut items = Vec::new();
    let mut push = |item: &str, claim: &str, holds: bool, detail: String| items.push(ItemCheck::new(item, claim, holds, detail));

    push(
        "setup",
        "Z(S) = <xz> and |S| = 2^(2k+2)",
        s.center(&all) == s.closure(&[xz]) && s.order() == 1 << (2 * k + 2),
        format!("|S| = {}", s.order()),
    );
    let ja = s.extend(&j, &[a]);
    let wr = SmallGroup::from_group(&wreath_c2(&dihedral(k)?))?;
    push(
        "a",
        "J<a> is D_{2^k} wr C2",
        crate::grp::iso::are_isomorphic(&SmallGroup::from_group(&s.perm_subgroup(&ja))?, &wr),
        String::new(),
    );
    let q = cx.sub(&[&format!("d c^{m}")])?;
    let mut qok = q.len() == 1 << (k - 1) && cx.commute(&q, &p) && q.and(&p).len() == 1 && s.is_normal(&q, &t);
    if variant == Variant::HSquaredQ {
        qok &= cx.sub(&[&format!("d d^{m} c^{m}")])? == q;
    }
    let q_h = label_of(s, &s.extend(&q, &[h]))?;
    push("b", "Q = <dz> is cyclic of order 2^(k-1), centralizes P, meets P trivially, normal in T", qok, format!("|Q| = {}", q.len()));

    let inverts = |u: usize| j0.iter().all(|y| s.conj(y, u) == s.inv(y));
    let jh = cx.coset(&j, h);
    let jh_inv: Vec<usize> = jh.iter().copied().filter(|&y| s.elt_order(y) == 2).collect();
    match variant {
        Variant::HSquared1 => {
            push(
                "c",
                "h inverts J0 and all involutions of Jh are J-conjugate",
                inverts(h) && !jh_inv.is_empty() && cx.all_conjugate(&jh_inv, &j),
                format!("{} involutions in Jh", jh_inv.len()),
            );
            let b0 = cx.sub(&[&format!("d^{m}"), "a"])?;
            push(
                "d",
                "C_S(h) = <h> x B0 with B0 = <x,a> dihedral of order 8",
                cx.splits_centralizer(h, &b0) && cx.family_is(&b0, Family::Dihedral, 8)?,
                format!("|C_S(h)| = {}", s.centralizer(&s.closure(&[h])).len()),
            );
            let ba = cx.sub(&["f f^a h", "h"])?;
            push(
                "e",
                "C_S(a) = <a> x Ba with Ba = <ff^ah, h> dihedral of order 2^(k+1)",
                cx.splits_centralizer(a, &ba) && cx.family_is(&ba, Family::Dihedral, big)?,
                String::new(),
            );
            let ha = cx.el("h a")?;
            let bha = cx.sub(&["[h,f] f f^a h", "h"])?;
            push(
                "f",
                "C_S(ha) = <ha> x Bha with Bha = <[h,f]ff^ah, h> dihedral of order 2^(k+1)",
                cx.splits_centralizer(ha, &bha) && cx.family_is(&bha, Family::Dihedral, big)?,
                String::new(),
            );
        }
        Variant::HSquaredQ => {
            push("c", "there are no involutions in Jh", jh_inv.is_empty(), format!("{} involutions in Jh", jh_inv.len()));
            let fh = cx.el("f h")?;
            let j0fh = cx.coset(&j0, fh);
            push(
                "d",
                "fh inverts J0; all elements of J0fh square to xz and are J-conjugate",
                inverts(fh) && j0fh.iter().all(|&y| s.mul(y, y) == xz) && cx.all_conjugate(&j0fh, &j),
                String::new(),
            );
            let ba = cx.sub(&["f^a h", "f f^a"])?;
            push(
                "e",
                "C_S(a) = <a> x Ba with Ba = <f^ah, ff^a> semidihedral of order 2^(k+1), Z(Ba) = <xz>",
                cx.splits_centralizer(a, &ba)
                    && cx.family_is(&ba, Family::Semidihedral, big)?
                    && s.center(&ba) == s.closure(&[xz]),
                String::new(),
            );
            let b1 = cx.el(&format!("d^{m} f h a"))?;
            let bha = cx.sub(&["d^-1 f^a h", &format!("d^{m} a")])?;
            push(
                "f",
                "b1 = xfha is an involution, C_S(b1) = <b1> x Bha with Bha = <d^-1f^ah, xa> semidihedral, Z(Bha) = <xz>",
                s.elt_order(b1) == 2
                    && cx.splits_centralizer(b1, &bha)
                    && cx.family_is(&bha, Family::Semidihedral, big)?
                    && s.center(&bha) == s.closure(&[xz]),
                String::new(),
            );
        }
    }
    let jai: Vec<usize> = cx.coset(&j, a).into_iter().filter(|&y| s.elt_order(y) == 2).collect();
    let jhai: Vec<usize> = cx.coset(&j, s.mul(h, a)).into_iter().filter(|&y| s.elt_order(y) == 2).collect();
    push(
        "g",
        "all involutions of Ja are J-conjugate, as are all involutions of Jha",
        !jai.is_empty() && !jhai.is_empty() && cx.all_conjugate(&jai, &j) && cx.all_conjugate(&jhai, &j),
        format!("{} and {} involutions", jai.len(), jhai.len()),
    );
    let cffa = s.centralizer(&s.closure(&[ffa]));
    let w = SmallGroup::from_group(&combine(CombineMode::WreathC2, &elementary(2))?)?;
    let j0ffa = cx.coset(&j0, ffa);
    let mut classes: Vec<Bits> = Vec::new();
    for &y in &j0ffa {
        if !classes.iter().any(|c| c.contains(y)) {
            classes.push(cx.orbit(y, &all));
        }
    }
    let split = classes.len() == 2
        && classes.iter().all(|c| c.len() * 2 == j0ffa.len() && c.iter().all(|y| j0ffa.contains(&y)));
    let parts = [
        ("generated by f,x,a", cffa == s.closure(&[f, x, a])),
        ("wreath type", crate::grp::iso::are_isomorphic(&SmallGroup::from_group(&s.perm_subgroup(&cffa))?, &w)),
        ("J0ff^a is two S-classes", split),
    ];
    push(
        "h",
        "C_S(ff^a) = <f,x,a> is (C2 x C2) wr C2 and J0ff^a is the union of two S-classes of equal size",
        parts.iter().all(|p| p.1),
        format!("|C_S(ff^a)| = {}{}", cffa.len(), failing(&parts)),
    );
    let mut as_printed = vec![ItemCheck::new(
        "h",
        "all elements of J0ff^a are S-conjugate",
        cx.all_conjugate(&j0ffa, &all),
        format!("{} S-classes meet J0ff^a", classes.len()),
    )];
    let (d1, d2, fam, model, top) = match variant {
        Variant::HSquared1 => (
            cx.sub(&["f f^a h", &format!("d^{m} f f^a a")])?,
            cx.sub(&["[h,f] f f^a h", &format!("d^{m} a")])?,
            Family::Quaternion,
            "Q",
            cx.sub(&["h", "a"])?,
        ),
        Variant::HSquaredQ => (
            cx.sub(&["f^a h", "f f^a a"])?,
            cx.sub(&["d^-1 f^a h", "a"])?,
            Family::Semidihedral,
            "SD",
            cx.sub(&["f h", "a"])?,
        ),
    };
    if variant == Variant::HSquared1 {
        let printed = cx.sub(&["[h,f] f f^a h", "h"])?;
        as_printed.push(ItemCheck::new(
            "i",
            "D2 = <[h,f]ff^ah, h> is quaternion",
            cx.family_is(&printed, Family::Quaternion, big)?,
            format!("<[h,f]ff^ah, h> is {}", label_of(s, &printed)?),
        ));
    }
    let d = s.extend(&d1, &d2.to_vec());
    let d1f: Bits = s.conj_set(&d1, f);
    let derived = s.derived(&all);
    let alt = s.extend(&j0, &[ffa]);
    let alt = s.extend(&alt, &top.to_vec());
    let label = identify_small(s)?;
    let wanted = match variant {
        Variant::HSquared1 => Family::QCentralWr,
        Variant::HSquaredQ => Family::SdCentralWr,
    };
    let parts = [
        ("D1 type", cx.family_is(&d1, fam, big)?),
        ("D2 type", cx.family_is(&d2, fam, big)?),
        ("[D1,D2] = 1", cx.commute(&d1, &d2)),
        ("D1 meets D2 in <xz>", d1.and(&d2) == s.closure(&[xz])),
        ("D1^f = D2", d1f == d2),
        ("D = J0<..>", d == alt),
        ("D = [S,S]<..>", d == s.extend(&derived, &top.to_vec())),
        ("S = D<f>", s.extend(&d, &[f]) == all),
        ("S type", label.family == wanted),
    ];
    push(
        "i",
        &format!("D1, D2 are {model}_{{2^(k+1)}}, commute, meet in <xz>, D1^f = D2, D = D1D2 = J0<ff^a,..> = [S,S]<..>, S = D<f>"),
        parts.iter().all(|p| p.1),
        format!("S is {label}{}", failing(&parts)),
    );
    let holds = items.iter().all(|i| i.holds);
    Ok(PresentationReport {
        k,
        variant: match variant {
            Variant::HSquared1 => "h^2=1".into(),
            Variant::HSquaredQ => "h^2=Q".into(),
        },
        order: s.order(),
        isotype: label.to_string(),
        q_h,
        items,
        as_printed,
        holds,
    })
}
