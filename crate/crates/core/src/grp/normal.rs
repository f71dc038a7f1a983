//! Normal structure: closures, derived series, `O_{p'}`, `Z*`, components
//! and quotients.

use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::grp::cosets::{CosetSpace, COSET_CAP};
use crate::grp::local::{center, class_representatives};
use crate::perm::Perm;

/// Normal closure of `⟨xs⟩` in `g`.
pub fn normal_closure_of(g: &PermGroup, xs: &[Perm]) -> PermGroup {
    let mut gens: Vec<Perm> = xs.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut cur = g.subgroup(gens.clone());
    let mut k = 0;
    while k < gens.len() {
        for s in g.gens() {
            let y = gens[k].conj(s);
            if !cur.contains(&y) {
                gens.push(y);
                cur = g.subgroup(gens.clone());
            }
        }
        k += 1;
    }
    cur
}

pub fn normal_closure(g: &PermGroup, h: &PermGroup) -> PermGroup {
    normal_closure_of(g, h.gens())
}

/// `[A, B]` for subgroups normalized by `g`: normal closure of the
/// generator commutators.
pub fn commutator_subgroup(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> PermGroup {
    let mut comms = Vec::new();
    for x in a.gens() {
        for y in b.gens() {
            comms.push(x.comm(y));
        }
    }
    normal_closure_of(g, &comms)
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let mut comms = Vec::new();
    for (i, x) in g.gens().iter().enumerate() {
        for y in &g.gens()[i + 1..] {
            comms.push(x.comm(y));
        }
    }
    normal_closure_of(g, &comms)
}

/// `G ≥ G' ≥ G'' ≥ …` up to the first repeated term.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![g.clone()];
    loop {
        let last = out.last().unwrap();
        let d = derived_subgroup(last);
        if d.order() == last.order() {
            return out;
        }
        out.push(d);
    }
}

pub fn perfect_core(g: &PermGroup) -> PermGroup {
    derived_series(g).pop().unwrap()
}

pub fn is_perfect(g: &PermGroup) -> bool {
    derived_subgroup(g).order() == g.order()
}

pub fn is_solvable(g: &PermGroup) -> bool {
    perfect_core(g).is_trivial()
}

fn coprime_to(n: u128, p: u128) -> bool {
    !n.is_multiple_of(p)
}

/// `O_{p'}(G)`, for groups small enough to enumerate.
///
/// Generated by the normal closures of p'-elements that are themselves
/// p'-groups.
pub fn p_prime_core(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let p = p as u128;
    let mut gens: Vec<Perm> = Vec::new();
    let mut cur = PermGroup::trivial(g.degree());
    for (x, _) in class_representatives(g)? {
        if x.is_identity() || !coprime_to(x.order() as u128, p) || cur.contains(&x) {
            continue;
        }
        let n = normal_closure_of(g, &[x]);
        if coprime_to(n.order(), p) {
            gens.extend(n.gens().iter().cloned());
            cur = g.subgroup(gens.clone());
        }
    }
    debug_assert!(coprime_to(cur.order(), p));
    Ok(cur)
}

/// Preimage in `G` of `Z(G/N)` for `N ⊴ G`: elements commuting with every
/// generator modulo `N`.
pub fn center_mod(g: &PermGroup, n: &PermGroup) -> Result<PermGroup> {
    let mut gens: Vec<Perm> = n.gens().to_vec();
    let mut cur = n.clone();
    for x in g.elements()? {
        if cur.contains(&x) {
            continue;
        }
        if g.gens().iter().all(|s| n.contains(&x.comm(s))) {
            gens.push(x);
            cur = g.subgroup(gens.clone());
        }
    }
    Ok(cur)
}

/// `(O_{p'}(G), Z*_p(G))`.
pub fn p_prime_core_and_zstar(g: &PermGroup, p: u64) -> Result<(PermGroup, PermGroup)> {
    let o = p_prime_core(g, p)?;
    let z = center_mod(g, &o)?;
    Ok((o, z))
}

/// Whether a group is quasisimple: perfect, and every class outside the
/// centre has normal closure equal to the whole group.
pub fn is_quasisimple(g: &PermGroup) -> Result<bool> {
    if g.is_trivial() || !is_perfect(g) {
        return Ok(false);
    }
    let z = center(g)?;
    for (x, _) in class_representatives(g)? {
        if z.contains(&x) {
            continue;
        }
        if normal_closure_of(g, &[x]).order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The components (quasisimple subnormal subgroups) of `g`.
///
/// Every component lies in the perfect core `D`. If `D` is not quasisimple,
/// each component sits inside the proper normal closure in `D` of one of its
/// non-central elements, so recursing on perfect cores of those closures
/// finds all of them.
pub fn components(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut out: Vec<PermGroup> = Vec::new();
    collect_components(&perfect_core(g), &mut out)?;
    out.sort_by_key(|k| (k.order(), k.gens().to_vec()));
    Ok(out)
}

fn collect_components(d: &PermGroup, out: &mut Vec<PermGroup>) -> Result<()> {
    if d.is_trivial() {
        return Ok(());
    }
    if is_quasisimple(d)? {
        if !out.iter().any(|k| k.equals(d)) {
            out.push(d.clone());
        }
        return Ok(());
    }
    let mut seen: Vec<PermGroup> = Vec::new();
    for (x, _) in class_representatives(d)? {
        if x.is_identity() {
            continue;
        }
        let n = normal_closure_of(d, &[x]);
        if n.order() == d.order() {
            continue;
        }
        let core = perfect_core(&n);
        if core.is_trivial() || seen.iter().any(|s| s.equals(&core)) {
            continue;
        }
        seen.push(core.clone());
        collect_components(&core, out)?;
    }
    Ok(())
}

/// Layer `E(G)`: the product of the components.
pub fn layer(g: &PermGroup) -> Result<PermGroup> {
    let gens: Vec<Perm> = components(g)?.iter().flat_map(|k| k.gens().to_vec()).collect();
    Ok(g.subgroup(gens))
}

/// `G/N` in its regular action on the cosets of `N`, with the projection.
pub struct Quotient {
    pub group: PermGroup,
    space: CosetSpace,
}

impl Quotient {
    pub fn project(&self, x: &Perm) -> Result<Perm> {
        self.space.perm_of(x)
    }

    /// Some preimage of a quotient element given as a coset index.
    pub fn lift(&self, coset: usize) -> &Perm {
        self.space.rep(coset)
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }
}

pub fn quotient_group(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    if !g.contains_group(n) || !n.is_normal_in(g) {
        return Err(FswError::Precondition("N is not a normal subgroup of G".into()));
    }
    let space = CosetSpace::new(g, n, COSET_CAP)?;
    let order = space.len() as u128;
    let img = space.action_group()?;
    let group = PermGroup::with_order(img.degree(), img.gens().to_vec(), order);
    Ok(Quotient { group, space })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn g(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| parse_cycles(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn series_of_s4() {
        let s4 = g(4, &["(1,2,3,4)", "(1,2)"]);
        let orders: Vec<u128> = derived_series(&s4).iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(is_solvable(&s4));
    }

    #[test]
    fn cores_of_s3_and_c6() {
        let s3 = g(3, &["(1,2,3)", "(1,2)"]);
        let (o, z) = p_prime_core_and_zstar(&s3, 2).unwrap();
        assert_eq!((o.order(), z.order()), (3, 6));
        let c6 = g(5, &["(1,2)(3,4,5)"]);
        let (o, z) = p_prime_core_and_zstar(&c6, 2).unwrap();
        assert_eq!((o.order(), z.order()), (3, 6));
    }

    #[test]
    fn components_of_a6_times_s4() {
        let a6s4 = g(10, &["(1,2,3)", "(2,3,4,5,6)", "(7,8,9,10)", "(7,8)"]);
        let comps = components(&a6s4).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].order(), 360);
        assert!(components(&g(4, &["(1,2,3,4)", "(1,2)"])).unwrap().is_empty());
    }

    #[test]
    fn quotient_by_klein_four() {
        let s4 = g(4, &["(1,2,3,4)", "(1,2)"]);
        let v = g(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let q = quotient_group(&s4, &v).unwrap();
        assert_eq!(q.group.order(), 6);
        let x = parse_cycles("(1,2)(3,4)", 4).unwrap();
        assert!(q.project(&x).unwrap().is_identity());
        assert!(quotient_group(&s4, &g(4, &["(1,2)"])).is_err());
    }
}
