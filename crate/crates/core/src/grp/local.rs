//! Centralizers, normalizers and conjugators via orbit–stabilizer on the
//! conjugation action.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use crate::chain::StabChain;
use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Default cap on orbit lengths for conjugation orbits.
pub const ORBIT_CAP: usize = 2_000_000;

/// Cap on the order of a subgroup whose element set is fingerprinted.
pub const SIGNATURE_CAP: u128 = 200_000;

pub(crate) fn perm_hash(p: &Perm) -> u64 {
    let mut h = DefaultHasher::new();
    p.images().hash(&mut h);
    h.finish()
}

/// Order-independent 64-bit fingerprint of an element set.
pub fn signature<'a, I: IntoIterator<Item = &'a Perm>>(elements: I) -> u64 {
    elements.into_iter().fold(0u64, |acc, p| acc.wrapping_add(perm_hash(p).rotate_left(7) ^ 0x9e37_79b9_7f4a_7c15))
}

/// Orbit of an element under conjugation, with transversal.
struct ElementOrbit {
    points: Vec<Perm>,
    trans: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

fn element_orbit(g: &PermGroup, x: &Perm, stop_at: Option<&Perm>, cap: usize) -> Result<ElementOrbit> {
    let mut orb = ElementOrbit { points: vec![x.clone()], trans: vec![g.identity()], index: HashMap::new() };
    orb.index.insert(x.clone(), 0);
    let mut k = 0;
    while k < orb.points.len() {
        if let Some(t) = stop_at {
            if orb.index.contains_key(t) {
                break;
            }
        }
        for s in g.gens() {
            let y = orb.points[k].conj(s);
            if !orb.index.contains_key(&y) {
                if orb.points.len() >= cap {
                    return Err(FswError::cap("conjugation orbit", cap as u64));
                }
                let t = orb.trans[k].mul(s);
                orb.index.insert(y.clone(), orb.points.len());
                orb.points.push(y);
                orb.trans.push(t);
            }
        }
        k += 1;
    }
    Ok(orb)
}

/// Collects Schreier generators until the stabilizer reaches `target` order.
fn stabilizer_from_orbit<F>(g: &PermGroup, n_points: usize, trans: &[Perm], image: F, target: u128) -> PermGroup
where
    F: Fn(usize, &Perm) -> usize,
{
    let mut chain = StabChain::trivial(g.degree());
    let mut gens: Vec<Perm> = Vec::new();
    if target > 1 {
        'outer: for i in 0..n_points {
            for s in g.gens() {
                let j = image(i, s);
                let h = trans[i].mul(s).mul(&trans[j].inv());
                if !h.is_identity() && chain.insert(&h) {
                    gens.push(h);
                    if chain.order() == target {
                        break 'outer;
                    }
                }
            }
        }
        if chain.order() != target {
            chain.complete();
        }
    }
    debug_assert_eq!(chain.order(), target);
    PermGroup::with_chain(g.degree(), gens, chain)
}

/// `C_G(x)` for a single element.
pub fn centralizer_element(g: &PermGroup, x: &Perm) -> Result<PermGroup> {
    centralizer_element_capped(g, x, ORBIT_CAP)
}

pub fn centralizer_element_capped(g: &PermGroup, x: &Perm, cap: usize) -> Result<PermGroup> {
    if x.degree() != g.degree() {
        return Err(FswError::DegreeMismatch(g.degree(), x.degree()));
    }
    let orb = element_orbit(g, x, None, cap)?;
    let target = g.order() / orb.points.len() as u128;
    let img = |i: usize, s: &Perm| orb.index[&orb.points[i].conj(s)];
    Ok(stabilizer_from_orbit(g, orb.points.len(), &orb.trans, img, target))
}

/// Size of the conjugacy class of `x` in `g`.
pub fn class_size(g: &PermGroup, x: &Perm) -> Result<usize> {
    Ok(element_orbit(g, x, None, ORBIT_CAP)?.points.len())
}

/// The full conjugacy class of `x`.
pub fn conjugacy_class(g: &PermGroup, x: &Perm) -> Result<Vec<Perm>> {
    Ok(element_orbit(g, x, None, ORBIT_CAP)?.points)
}

/// `C_G(H)`, intersecting element centralizers generator by generator.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let mut c = g.clone();
    for x in h.gens() {
        if c.gens().iter().all(|y| y.mul(x) == x.mul(y)) {
            continue;
        }
        c = centralizer_element(&c, x)?;
    }
    Ok(c)
}

/// An element `t` with `x^t = y`, if one exists.
pub fn element_conjugator(g: &PermGroup, x: &Perm, y: &Perm) -> Result<Option<Perm>> {
    if x.order() != y.order() {
        return Ok(None);
    }
    let orb = element_orbit(g, x, Some(y), ORBIT_CAP)?;
    Ok(orb.index.get(y).map(|&i| orb.trans[i].clone()))
}

/// Orbit of a subgroup under conjugation, keyed by element-set signatures
/// with an exact membership re-check on every key hit.
struct SubgroupOrbit {
    trans: Vec<Perm>,
    by_key: HashMap<u64, Vec<usize>>,
}

struct SubgroupData {
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    set: HashSet<Perm>,
}

impl SubgroupData {
    fn new(h: &PermGroup) -> Result<SubgroupData> {
        if h.order() > SIGNATURE_CAP {
            return Err(FswError::cap("subgroup signature", SIGNATURE_CAP as u64));
        }
        let elements = h.elements()?;
        let set = elements.iter().cloned().collect();
        Ok(SubgroupData { gens: h.gens().to_vec(), elements, set })
    }

    fn key(&self, t: &Perm) -> u64 {
        signature(self.elements.iter().map(|e| e.conj(t)).collect::<Vec<_>>().iter())
    }

    /// Whether `H^a = H^b`.
    fn same(&self, a: &Perm, b: &Perm) -> bool {
        let c = a.mul(&b.inv());
        self.gens.iter().all(|x| self.set.contains(&x.conj(&c)))
    }
}

impl SubgroupOrbit {
    fn find(&self, data: &SubgroupData, key: u64, t: &Perm) -> Option<usize> {
        self.by_key.get(&key)?.iter().copied().find(|&i| data.same(&self.trans[i], t))
    }
}

fn subgroup_orbit(
    g: &PermGroup,
    data: &SubgroupData,
    stop: Option<(u64, &dyn Fn(&Perm) -> bool)>,
    cap: usize,
) -> Result<(SubgroupOrbit, Option<usize>)> {
    let id = g.identity();
    let mut orb = SubgroupOrbit { trans: vec![id.clone()], by_key: HashMap::new() };
    orb.by_key.entry(data.key(&id)).or_default().push(0);
    let check = |orb: &SubgroupOrbit, i: usize, key: u64| -> bool {
        match &stop {
            Some((k, f)) => *k == key && f(&orb.trans[i]),
            None => false,
        }
    };
    if check(&orb, 0, data.key(&id)) {
        return Ok((orb, Some(0)));
    }
    let mut k = 0;
    while k < orb.trans.len() {
        for s in g.gens() {
            let t = orb.trans[k].mul(s);
            let key = data.key(&t);
            if orb.find(data, key, &t).is_none() {
                if orb.trans.len() >= cap {
                    return Err(FswError::cap("subgroup conjugation orbit", cap as u64));
                }
                let i = orb.trans.len();
                orb.trans.push(t);
                orb.by_key.entry(key).or_default().push(i);
                if check(&orb, i, key) {
                    return Ok((orb, Some(i)));
                }
            }
        }
        k += 1;
    }
    Ok((orb, None))
}

/// `N_G(H)` for `H ≤ G`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if !g.contains_group(h) {
        return Err(FswError::Precondition("H is not contained in G".into()));
    }
    if h.is_normal_in(g) {
        return Ok(g.clone());
    }
    let data = SubgroupData::new(h)?;
    let (orb, _) = subgroup_orbit(g, &data, None, ORBIT_CAP)?;
    let n = orb.trans.len();
    let target = g.order() / n as u128;
    let img = |i: usize, s: &Perm| {
        let t = orb.trans[i].mul(s);
        orb.find(&data, data.key(&t), &t).expect("orbit closed under generators")
    };
    Ok(stabilizer_from_orbit(g, n, &orb.trans, img, target))
}

/// An element `t ∈ G` with `H^t = K`, if one exists.
pub fn subgroup_conjugator(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<Option<Perm>> {
    if h.order() != k.order() {
        return Ok(None);
    }
    if h.equals(k) {
        return Ok(Some(g.identity()));
    }
    let data = SubgroupData::new(h)?;
    let kdata = SubgroupData::new(k)?;
    let kkey = signature(kdata.elements.iter());
    let is_k = |t: &Perm| h.gens().iter().all(|x| kdata.set.contains(&x.conj(t)));
    let (orb, hit) = subgroup_orbit(g, &data, Some((kkey, &is_k)), ORBIT_CAP)?;
    Ok(hit.map(|i| orb.trans[i].clone()))
}

/// Conjugacy classes of involutions: `(representative, class size, |C_G(rep)|)`.
///
/// Every class of 2-elements meets a Sylow 2-subgroup, so representatives are
/// drawn from the involutions of `sylow` and fused in `G`.
pub fn involution_classes(g: &PermGroup, sylow: &PermGroup) -> Result<Vec<(Perm, usize, u128)>> {
    let mut invols: Vec<Perm> = sylow.elements()?.into_iter().filter(|x| x.order() == 2).collect();
    invols.sort();
    let mut classes: Vec<(Perm, HashSet<Perm>)> = Vec::new();
    for x in invols {
        if classes.iter().any(|(_, c)| c.contains(&x)) {
            continue;
        }
        let cls: HashSet<Perm> = conjugacy_class(g, &x)?.into_iter().collect();
        classes.push((x, cls));
    }
    let order = g.order();
    Ok(classes.into_iter().map(|(x, c)| (x, c.len(), order / c.len() as u128)).collect())
}

/// Representatives of all conjugacy classes, for groups small enough to
/// enumerate. Sorted by (element order, representative).
pub fn class_representatives(g: &PermGroup) -> Result<Vec<(Perm, usize)>> {
    let mut els = g.elements()?;
    els.sort();
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = Vec::new();
    for x in els {
        if seen.contains(&x) {
            continue;
        }
        let cls = conjugacy_class(g, &x)?;
        let n = cls.len();
        seen.extend(cls);
        out.push((x, n));
    }
    out.sort_by(|a, b| a.0.order().cmp(&b.0.order()).then(a.0.cmp(&b.0)));
    Ok(out)
}

/// `Z(G)`.
pub fn center(g: &PermGroup) -> Result<PermGroup> {
    centralizer(g, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn sym(n: usize) -> PermGroup {
        let c: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        PermGroup::new(n, vec![Perm::from_images(c).unwrap(), Perm::from_images(t).unwrap()]).unwrap()
    }

    #[test]
    fn centralizer_in_s4() {
        let g = sym(4);
        let x = parse_cycles("(1,2)(3,4)", 4).unwrap();
        assert_eq!(centralizer_element(&g, &x).unwrap().order(), 8);
        assert_eq!(centralizer_element(&g, &g.identity()).unwrap().order(), 24);
    }

    #[test]
    fn normalizer_of_cyclic_in_s4() {
        let g = sym(4);
        let h = PermGroup::new(4, vec![parse_cycles("(1,2,3,4)", 4).unwrap()]).unwrap();
        assert_eq!(normalizer(&g, &h).unwrap().order(), 8);
        assert_eq!(normalizer(&g, &g).unwrap().order(), 24);
    }

    #[test]
    fn conjugators() {
        let g = sym(4);
        let a = PermGroup::new(4, vec![parse_cycles("(1,2)", 4).unwrap()]).unwrap();
        let b = PermGroup::new(4, vec![parse_cycles("(1,2)(3,4)", 4).unwrap()]).unwrap();
        assert!(subgroup_conjugator(&g, &a, &b).unwrap().is_none());
        let c = PermGroup::new(4, vec![parse_cycles("(3,4)", 4).unwrap()]).unwrap();
        let t = subgroup_conjugator(&g, &a, &c).unwrap().unwrap();
        assert!(a.conjugate(&t).equals(&c));
        let x = parse_cycles("(1,2,3)", 4).unwrap();
        let y = parse_cycles("(2,4,3)", 4).unwrap();
        let t = element_conjugator(&g, &x, &y).unwrap().unwrap();
        assert_eq!(x.conj(&t), y);
    }
}
