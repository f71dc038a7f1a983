//! Isomorphism testing and automorphism groups of small groups by
//! backtracking over generator images.

use std::collections::HashMap;

use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::grp::cosets::{CosetSpace, COSET_CAP};
use crate::grp::small::{Bits, SmallGroup};
use crate::perm::Perm;

/// Per-element invariant preserved by isomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: u32,
    pub class_size: u32,
    pub square_roots: u32,
    pub central: bool,
    pub in_derived: bool,
    pub power_class: u32,
}

pub fn fingerprints(g: &SmallGroup) -> Vec<Fingerprint> {
    let n = g.order();
    let all = g.all();
    let mut class_size = vec![0u32; n];
    for cls in g.element_classes(&all) {
        for &x in &cls {
            class_size[x] = cls.len() as u32;
        }
    }
    let mut roots = vec![0u32; n];
    for y in 0..n {
        roots[g.mul(y, y)] += 1;
    }
    let z = g.center(&all);
    let d = g.derived(&all);
    (0..n)
        .map(|x| {
            let sq = g.mul(x, x);
            Fingerprint {
                order: g.elt_order(x),
                class_size: class_size[x],
                square_roots: roots[x],
                central: z.contains(x),
                in_derived: d.contains(x),
                power_class: class_size[sq] * 1000 + roots[sq],
            }
        })
        .collect()
}

/// Searches for isomorphisms `G → H` sending a fixed generating list of `G`.
struct Search<'a> {
    g: &'a SmallGroup,
    h: &'a SmallGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

const UNSET: u16 = u16::MAX;

impl<'a> Search<'a> {
    fn new(g: &'a SmallGroup, h: &'a SmallGroup, fg: &[Fingerprint], fh: &[Fingerprint]) -> Search<'a> {
        let gens = rare_generators(g, fg);
        let mut by_fp: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        for (y, f) in fh.iter().enumerate() {
            by_fp.entry(*f).or_default().push(y);
        }
        let candidates = gens.iter().map(|&x| by_fp.get(&fg[x]).cloned().unwrap_or_default()).collect();
        Search { g, h, gens, candidates }
    }

    /// The homomorphism on `⟨gens[..images.len()]⟩` defined by `images`,
    /// if it is well defined and injective.
    fn partial_map(&self, images: &[usize]) -> Option<Vec<u16>> {
        let mut map = vec![UNSET; self.g.order()];
        map[0] = 0;
        let mut queue = vec![0usize];
        let mut used = Bits::singleton(0);
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for (j, &img) in images.iter().enumerate() {
                let y = self.g.mul(x, self.gens[j]);
                let v = self.h.mul(map[x] as usize, img) as u16;
                if map[y] == UNSET {
                    if used.contains(v as usize) {
                        return None;
                    }
                    used.insert(v as usize);
                    map[y] = v;
                    queue.push(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Depth-first completion of `images`; calls `found` on each full map and
    /// stops when it returns true.
    fn complete<F: FnMut(&[u16]) -> bool>(&self, images: &mut Vec<usize>, found: &mut F) -> bool {
        let map = match self.partial_map(images) {
            Some(m) => m,
            None => return false,
        };
        let i = images.len();
        if i == self.gens.len() {
            return found(&map);
        }
        let image_set: Bits = {
            let mut b = Bits::empty();
            for &v in &map {
                if v != UNSET {
                    b.insert(v as usize);
                }
            }
            b
        };
        for &c in &self.candidates[i] {
            if image_set.contains(c) {
                continue;
            }
            images.push(c);
            let stop = self.complete(images, found);
            images.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// A generating set built from elements whose fingerprints are rarest.
fn rare_generators(g: &SmallGroup, fp: &[Fingerprint]) -> Vec<usize> {
    let mut count: HashMap<Fingerprint, usize> = HashMap::new();
    for f in fp {
        *count.entry(*f).or_default() += 1;
    }
    let mut order: Vec<usize> = (1..g.order()).collect();
    order.sort_by_key(|&x| (count[&fp[x]], std::cmp::Reverse(fp[x].order), x));
    let mut gens = Vec::new();
    let mut cur = g.trivial();
    let all = g.all();
    for x in order {
        if cur == all {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = g.extend(&cur, &[x]);
        }
    }
    gens
}

fn profile(fp: &[Fingerprint]) -> Vec<Fingerprint> {
    let mut v = fp.to_vec();
    v.sort();
    v
}

/// An isomorphism `G → H` as an element-index map, if one exists.
pub fn isomorphism(g: &SmallGroup, h: &SmallGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let fg = fingerprints(g);
    let fh = fingerprints(h);
    if profile(&fg) != profile(&fh) {
        return None;
    }
    let s = Search::new(g, h, &fg, &fh);
    let mut out = None;
    s.complete(&mut Vec::new(), &mut |m: &[u16]| {
        out = Some(m.iter().map(|&v| v as usize).collect());
        true
    });
    out
}

pub fn are_isomorphic(g: &SmallGroup, h: &SmallGroup) -> bool {
    isomorphism(g, h).is_some()
}

/// `Aut(G)` acting on the element indices of `G`.
pub struct AutGroup {
    pub group: PermGroup,
    pub order: u128,
    pub inner: PermGroup,
}

impl AutGroup {
    pub fn inner_order(&self) -> u128 {
        self.inner.order()
    }

    pub fn out_order(&self) -> u128 {
        self.order / self.inner.order()
    }

    /// `Out(G)` in its regular action, as a small group when it fits.
    pub fn out_group(&self) -> Result<SmallGroup> {
        if self.out_order() > crate::grp::small::SMALL_CAP as u128 {
            return Err(FswError::cap("outer automorphism group order", crate::grp::small::SMALL_CAP as u64));
        }
        let space = CosetSpace::new(&self.group, &self.inner, COSET_CAP)?;
        let img = space.action_group()?;
        let q = PermGroup::with_order(img.degree(), img.gens().to_vec(), space.len() as u128);
        SmallGroup::from_group(&q)
    }
}

/// Conjugation by `x` as a map on element indices.
fn inner_map(g: &SmallGroup, x: usize) -> Perm {
    Perm::from_raw((0..g.order()).map(|y| g.conj(y, x) as u16).collect())
}

/// The full automorphism group, by a levelled search: at each level the
/// orbit of the next generator under the pointwise stabilizer of the earlier
/// ones is computed, using automorphisms already found to skip candidates.
pub fn automorphism_group(g: &SmallGroup) -> Result<AutGroup> {
    if g.order() > crate::grp::small::SMALL_CAP {
        return Err(FswError::cap("automorphism group input order", crate::grp::small::SMALL_CAP as u64));
    }
    let fp = fingerprints(g);
    let s = Search::new(g, g, &fp, &fp);
    let k = s.gens.len();
    let n = g.order();
    let mut auts: Vec<Perm> = Vec::new();
    let mut order: u128 = 1;
    for level in (0..k).rev() {
        let prefix: Vec<usize> = s.gens[..level].to_vec();
        let target = s.gens[level];
        // automorphisms found so far all fix gens[..level]
        let mut orbit: Vec<usize> = vec![target];
        let mut in_orbit = Bits::singleton(target);
        let mut rejected = Bits::empty();
        let close = |orbit: &mut Vec<usize>, in_orbit: &mut Bits, auts: &[Perm]| {
            let mut i = 0;
            while i < orbit.len() {
                for a in auts {
                    let y = a.image(orbit[i]);
                    if !in_orbit.contains(y) {
                        in_orbit.insert(y);
                        orbit.push(y);
                    }
                }
                i += 1;
            }
        };
        for &c in &s.candidates[level] {
            if in_orbit.contains(c) || rejected.contains(c) || prefix.contains(&c) {
                continue;
            }
            let mut images = prefix.clone();
            images.push(c);
            let mut found: Option<Perm> = None;
            s.complete(&mut images, &mut |m: &[u16]| {
                found = Some(Perm::from_raw(m.to_vec()));
                true
            });
            match found {
                Some(a) => {
                    auts.push(a);
                    in_orbit.insert(c);
                    orbit.push(c);
                    close(&mut orbit, &mut in_orbit, &auts);
                }
                None => {
                    // the whole orbit of c under the known stabilizer is out
                    let mut rej = vec![c];
                    let mut rb = Bits::singleton(c);
                    close(&mut rej, &mut rb, &auts);
                    rejected = rejected.or(&rb);
                }
            }
        }
        order *= orbit.len() as u128;
    }
    let group = PermGroup::with_order(n, auts, order);
    let inner_gens: Vec<Perm> = g.gens.iter().map(|&x| inner_map(g, x)).collect();
    let inner = PermGroup::from_gens(n, inner_gens);
    Ok(AutGroup { group, order, inner })
}

/// Invariants `[n1, n2, …]` of an abelian group, with `n1 | n2 | …`
/// replaced by the prime-power elementary divisors in ascending order.
pub fn abelian_invariants(g: &SmallGroup) -> Option<Vec<u64>> {
    if !g.is_abelian(&g.all()) {
        return None;
    }
    let n = g.order() as u64;
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            // counts of elements killed by p^i
            let mut prev_rank_sum = 0u32;
            let mut ranks = Vec::new();
            let mut i = 1;
            loop {
                let pi = p.pow(i);
                let cnt = (0..g.order()).filter(|&x| g.pow(x, pi as i64) == 0).count() as u64;
                let mut lg = 0u32;
                let mut c = cnt;
                while c.is_multiple_of(p) && c > 1 {
                    c /= p;
                    lg += 1;
                }
                let r = lg - prev_rank_sum;
                if r == 0 {
                    break;
                }
                ranks.push(r);
                prev_rank_sum = lg;
                i += 1;
            }
            for (i, &r) in ranks.iter().enumerate() {
                let next = ranks.get(i + 1).copied().unwrap_or(0);
                for _ in 0..(r - next) {
                    out.push(p.pow(i as u32 + 1));
                }
            }
        }
        p += 1;
    }
    out.sort();
    Some(out)
}

/// Short structure name for a small group: abelian invariants, or order and
/// a few invariants otherwise.
pub fn describe(g: &SmallGroup) -> String {
    if g.order() == 1 {
        return "1".into();
    }
    if let Some(inv) = abelian_invariants(g) {
        return inv.iter().map(|q| format!("C{q}")).collect::<Vec<_>>().join(" x ");
    }
    let z = g.center(&g.all()).len();
    let d = g.derived(&g.all()).len();
    format!("nonabelian of order {} (|Z| = {z}, |G'| = {d})", g.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn small(n: usize, gens: &[&str]) -> SmallGroup {
        let g = PermGroup::new(n, gens.iter().map(|s| parse_cycles(s, n).unwrap()).collect()).unwrap();
        SmallGroup::from_group(&g).unwrap()
    }

    #[test]
    fn d8_vs_q8() {
        let d8 = small(4, &["(1,2,3,4)", "(1,3)"]);
        let q8 = small(8, &["(1,3,2,4)(5,8,6,7)", "(1,5,2,6)(3,7,4,8)"]);
        assert_eq!(q8.order(), 8);
        assert!(!are_isomorphic(&d8, &q8));
        assert!(are_isomorphic(&d8, &d8));
        let d8b = small(8, &["(1,2,3,4)(5,6,7,8)", "(2,4)(6,8)"]);
        let phi = isomorphism(&d8, &d8b).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(phi[d8.mul(a, b)], d8b.mul(phi[a], phi[b]));
            }
        }
    }

    #[test]
    fn automorphism_orders() {
        let d8 = small(4, &["(1,2,3,4)", "(1,3)"]);
        let a = automorphism_group(&d8).unwrap();
        assert_eq!(a.order, 8);
        assert_eq!(a.group.order(), 8);
        assert_eq!(a.out_order(), 2);
        let v4 = small(4, &["(1,2)", "(3,4)"]);
        assert_eq!(automorphism_group(&v4).unwrap().order, 6);
        let e8 = small(6, &["(1,2)", "(3,4)", "(5,6)"]);
        assert_eq!(automorphism_group(&e8).unwrap().order, 168);
        let c2 = small(2, &["(1,2)"]);
        assert_eq!(automorphism_group(&c2).unwrap().order, 1);
        let q8 = small(8, &["(1,3,2,4)(5,8,6,7)", "(1,5,2,6)(3,7,4,8)"]);
        assert_eq!(automorphism_group(&q8).unwrap().order, 24);
    }

    #[test]
    fn invariants() {
        let g = small(6, &["(1,2)", "(3,4,5,6)"]);
        assert_eq!(abelian_invariants(&g), Some(vec![2, 4]));
        assert_eq!(describe(&g), "C2 x C4");
        let c6 = small(5, &["(1,2)(3,4,5)"]);
        assert_eq!(abelian_invariants(&c6), Some(vec![2, 3]));
    }
}
