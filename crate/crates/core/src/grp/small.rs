//! Explicitly enumerated groups of order at most 512 with a full
//! multiplication table, and subgroups as bitsets over element indices.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Largest group order handled by [`SmallGroup`].
pub const SMALL_CAP: usize = 512;

/// A subset of `{0, …, 511}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits(pub [u64; 8]);

impl Bits {
    pub fn empty() -> Bits {
        Bits([0; 8])
    }

    pub fn singleton(i: usize) -> Bits {
        let mut b = Bits::empty();
        b.insert(i);
        b
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn and(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for k in 0..8 {
            r.0[k] &= o.0[k];
        }
        r
    }

    pub fn or(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for k in 0..8 {
            r.0[k] |= o.0[k];
        }
        r
    }

    pub fn minus(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for k in 0..8 {
            r.0[k] &= !o.0[k];
        }
        r
    }

    pub fn is_subset(&self, o: &Bits) -> bool {
        (0..8).all(|k| self.0[k] & !o.0[k] == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..8).flat_map(move |k| {
            let mut w = self.0[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

/// A finite group with indexed elements (identity at index 0).
#[derive(Clone, Debug)]
pub struct SmallGroup {
    pub elements: Vec<Perm>,
    index: HashMap<Perm, u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u32>,
    /// Element indices generating the group.
    pub gens: Vec<usize>,
}

impl SmallGroup {
    /// Enumerates `g`, which must have order at most [`SMALL_CAP`].
    pub fn from_group(g: &PermGroup) -> Result<SmallGroup> {
        if g.order() > SMALL_CAP as u128 {
            return Err(FswError::cap("small group order", SMALL_CAP as u64));
        }
        let mut elements = g.chain().elements();
        elements.sort();
        let gens_perm: Vec<Perm> = g.gens().to_vec();
        Ok(SmallGroup::from_elements(elements, &gens_perm))
    }

    /// Builds the table from a complete, sorted element list.
    pub(crate) fn from_elements(elements: Vec<Perm>, gens: &[Perm]) -> SmallGroup {
        let n = elements.len();
        let index: HashMap<Perm, u16> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u16)).collect();
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[&elements[i].mul(&elements[j])];
            }
        }
        let mut inv = vec![0u16; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        let gens = gens.iter().map(|g| index[g] as usize).filter(|&i| i != 0).collect();
        SmallGroup { elements, index, mul, inv, orders, gens }
    }

    /// Abstract group from a multiplication table, realized by its right
    /// regular representation.
    pub fn from_table(n: usize, table: &[usize]) -> SmallGroup {
        let elems: Vec<Perm> = (0..n)
            .map(|i| Perm::from_raw((0..n).map(|j| table[j * n + i] as u16).collect()))
            .collect();
        let mut sorted = elems.clone();
        sorted.sort();
        let mut g = SmallGroup::from_elements(sorted, &[]);
        g.gens = g.generating_set(&g.all());
        g
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `b⁻¹ a b`.
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut r = 0;
        for _ in 0..e.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn elt_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn all(&self) -> Bits {
        let mut b = Bits::empty();
        for i in 0..self.order() {
            b.insert(i);
        }
        b
    }

    pub fn trivial(&self) -> Bits {
        Bits::singleton(0)
    }

    pub fn perm_group(&self) -> PermGroup {
        self.perm_subgroup(&self.all())
    }

    /// The subgroup `h` as a permutation group in the ambient degree.
    pub fn perm_subgroup(&self, h: &Bits) -> PermGroup {
        let gens = self.generating_set(h).into_iter().map(|i| self.elements[i].clone()).collect();
        PermGroup::with_order(self.degree(), gens, h.len() as u128)
    }

    /// Subgroup generated by element indices.
    pub fn closure(&self, gens: &[usize]) -> Bits {
        self.extend(&self.trivial(), gens)
    }

    /// Subgroup generated by the subgroup `h` and extra elements.
    pub fn extend(&self, h: &Bits, extra: &[usize]) -> Bits {
        let mut gens: Vec<usize> = extra.iter().copied().filter(|&g| !h.contains(g)).collect();
        if gens.is_empty() {
            return *h;
        }
        gens.extend(self.generating_set(h));
        let mut set = *h;
        let mut queue: Vec<usize> = h.to_vec();
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push(y);
                }
            }
            k += 1;
        }
        set
    }

    /// A short generating set, chosen greedily in index order.
    pub fn generating_set(&self, h: &Bits) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for x in h.iter() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.extend(&cur, &[x]);
                if cur == *h {
                    break;
                }
            }
        }
        gens
    }

    pub fn conj_set(&self, h: &Bits, g: usize) -> Bits {
        let mut out = Bits::empty();
        for x in h.iter() {
            out.insert(self.conj(x, g));
        }
        out
    }

    pub fn centralizer(&self, h: &Bits) -> Bits {
        let gens = self.generating_set(h);
        let mut out = Bits::empty();
        for x in 0..self.order() {
            if gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)) {
                out.insert(x);
            }
        }
        out
    }

    pub fn normalizer(&self, h: &Bits) -> Bits {
        let gens = self.generating_set(h);
        let mut out = Bits::empty();
        for x in 0..self.order() {
            if gens.iter().all(|&y| h.contains(self.conj(y, x))) {
                out.insert(x);
            }
        }
        out
    }

    /// Normalizer of `h` inside the subgroup `within`.
    pub fn normalizer_in(&self, within: &Bits, h: &Bits) -> Bits {
        self.normalizer(h).and(within)
    }

    pub fn center(&self, h: &Bits) -> Bits {
        self.centralizer(h).and(h)
    }

    pub fn is_normal(&self, h: &Bits, within: &Bits) -> bool {
        let hg = self.generating_set(h);
        self.generating_set(within).iter().all(|&g| hg.iter().all(|&y| h.contains(self.conj(y, g))))
    }

    pub fn normal_closure(&self, h: &Bits, within: &Bits) -> Bits {
        let wg = self.generating_set(within);
        let mut cur = *h;
        loop {
            let mut extra = Vec::new();
            for y in self.generating_set(&cur) {
                for &g in &wg {
                    let c = self.conj(y, g);
                    if !cur.contains(c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return cur;
            }
            cur = self.extend(&cur, &extra);
        }
    }

    /// `[A, B]` for subgroups normalizing each other.
    pub fn commutator(&self, a: &Bits, b: &Bits) -> Bits {
        let mut gens = Vec::new();
        for x in a.iter() {
            for y in b.iter() {
                let c = self.comm(x, y);
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        let mut seen = Bits::empty();
        gens.retain(|&c| {
            let fresh = !seen.contains(c);
            seen.insert(c);
            fresh
        });
        self.closure(&gens)
    }

    pub fn derived(&self, h: &Bits) -> Bits {
        self.commutator(h, h)
    }

    pub fn is_abelian(&self, h: &Bits) -> bool {
        let g = self.generating_set(h);
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of `h` of order dividing `p^n` generate `Ω_n`.
    pub fn omega(&self, h: &Bits, p: u32, n: u32) -> Bits {
        let bound = p.pow(n);
        let gens: Vec<usize> = h.iter().filter(|&x| bound.is_multiple_of(self.elt_order(x))).collect();
        self.closure(&gens)
    }

    /// `℧^n(h) = ⟨x^{p^n}⟩`.
    pub fn agemo(&self, h: &Bits, p: u32, n: u32) -> Bits {
        let e = p.pow(n) as i64;
        let gens: Vec<usize> = h.iter().map(|x| self.pow(x, e)).collect();
        self.closure(&gens)
    }

    /// Frattini subgroup of a p-group: `[P,P]℧¹(P)`.
    pub fn frattini(&self, h: &Bits, p: u32) -> Bits {
        let d = self.derived(h);
        let a = self.agemo(h, p, 1);
        self.extend(&d, &a.to_vec())
    }

    pub fn is_elementary_abelian(&self, h: &Bits) -> bool {
        h.iter().all(|x| self.elt_order(x) <= 2) && self.is_abelian(h)
    }

    pub fn involutions(&self, h: &Bits) -> Vec<usize> {
        h.iter().filter(|&x| self.elt_order(x) == 2).collect()
    }

    /// Conjugacy classes of elements of `within`, as sorted element lists.
    pub fn element_classes(&self, within: &Bits) -> Vec<Vec<usize>> {
        let wg = self.generating_set(within);
        let mut seen = Bits::empty();
        let mut out = Vec::new();
        for x in within.iter() {
            if seen.contains(x) {
                continue;
            }
            let mut cls = vec![x];
            seen.insert(x);
            let mut k = 0;
            while k < cls.len() {
                for &g in &wg {
                    let y = self.conj(cls[k], g);
                    if !seen.contains(y) {
                        seen.insert(y);
                        cls.push(y);
                    }
                }
                k += 1;
            }
            cls.sort_unstable();
            out.push(cls);
        }
        out
    }

    /// Quotient by a normal subgroup, as an abstract group on the cosets.
    pub fn quotient(&self, h: &Bits, n: &Bits) -> (SmallGroup, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in h.iter() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for y in n.iter() {
                coset_of[self.mul(y, x)] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = coset_of[self.mul(reps[i], reps[j])];
            }
        }
        let q = SmallGroup::from_table(m, &table);
        // map abstract coset index -> element of q via regular representation
        let regular: Vec<usize> = (0..m)
            .map(|i| {
                let p = Perm::from_raw((0..m).map(|j| table[j * m + i] as u16).collect());
                q.index_of(&p).unwrap()
            })
            .collect();
        let proj = (0..self.order()).map(|x| if coset_of[x] == usize::MAX { usize::MAX } else { regular[coset_of[x]] }).collect();
        (q, proj)
    }

    /// Histogram of element orders within `h`.
    pub fn order_profile(&self, h: &Bits) -> Vec<(u32, usize)> {
        let mut m: std::collections::BTreeMap<u32, usize> = Default::default();
        for x in h.iter() {
            *m.entry(self.elt_order(x)).or_default() += 1;
        }
        m.into_iter().collect()
    }
}

/// Conjugacy-class table of the subgroups of a small p-group.
#[derive(Clone, Debug)]
pub struct SubgroupTable {
    /// Every subgroup, grouped by class; `subgroups[i]` lies in class `class_of[i]`.
    pub subgroups: Vec<Bits>,
    pub class_of: Vec<usize>,
    /// Element `t` with `subgroups[i] = rep^t`.
    pub conjugator: Vec<usize>,
    pub classes: Vec<SubgroupClass>,
    lookup: HashMap<Bits, usize>,
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: Bits,
    pub order: usize,
    /// Number of conjugates, `|P : N_P(rep)|`.
    pub size: usize,
    pub normalizer: Bits,
    /// Canonical signature: sorted element indices folded into 64 bits.
    pub signature: u64,
}

/// Default cap on the number of subgroups enumerated.
pub const SUBGROUP_CAP: usize = 2_000_000;

impl SubgroupTable {
    /// All subgroups of the p-group `g` up to conjugacy.
    ///
    /// Every subgroup of order `p^{i+1}` contains a normal subgroup `H` of
    /// index `p`, so layers are built as `H⟨x⟩` with `x ∈ N(H)∖H`, `x^p ∈ H`.
    pub fn build(g: &SmallGroup, p: u32) -> Result<SubgroupTable> {
        SubgroupTable::build_capped(g, p, SUBGROUP_CAP)
    }

    pub fn build_capped(g: &SmallGroup, p: u32, cap: usize) -> Result<SubgroupTable> {
        let all = g.all();
        let mut layer: Vec<Bits> = vec![g.trivial()];
        let mut subgroups: Vec<Bits> = vec![g.trivial()];
        let mut seen: HashSet<Bits> = HashSet::new();
        seen.insert(g.trivial());
        while !layer.is_empty() {
            let mut next = Vec::new();
            for h in &layer {
                let nh = g.normalizer(h);
                let mut done = *h;
                for x in nh.minus(h).iter() {
                    if done.contains(x) || !h.contains(g.pow(x, p as i64)) {
                        continue;
                    }
                    let k = g.extend(h, &[x]);
                    // elements of k outside h give the same k only up to coset
                    if seen.insert(k) {
                        if seen.len() > cap {
                            return Err(FswError::cap("subgroup enumeration", cap as u64));
                        }
                        next.push(k);
                    }
                    if k.len() == h.len() * p as usize {
                        done = done.or(&k);
                    }
                }
            }
            next.sort();
            subgroups.extend(next.iter().copied());
            layer = next;
        }
        debug_assert!(subgroups.last() == Some(&all));
        subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then(signature_of(a).cmp(&signature_of(b))).then(a.cmp(b)));
        let lookup: HashMap<Bits, usize> = subgroups.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let n = subgroups.len();
        let mut class_of = vec![usize::MAX; n];
        let mut conjugator = vec![0usize; n];
        let mut classes = Vec::new();
        let sgens = g.generating_set(&all);
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[i] = c;
            conjugator[i] = 0;
            let mut orbit = vec![i];
            let mut k = 0;
            while k < orbit.len() {
                let j = orbit[k];
                for &s in &sgens {
                    let img = g.conj_set(&subgroups[j], s);
                    let m = lookup[&img];
                    if class_of[m] == usize::MAX {
                        class_of[m] = c;
                        conjugator[m] = g.mul(conjugator[j], s);
                        orbit.push(m);
                    }
                }
                k += 1;
            }
            let rep = subgroups[i];
            classes.push(SubgroupClass {
                rep,
                order: rep.len(),
                size: orbit.len(),
                normalizer: g.normalizer(&rep),
                signature: signature_of(&rep),
            });
        }
        Ok(SubgroupTable { subgroups, class_of, conjugator, classes, lookup })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// `(class, t)` with `h = rep^t`.
    pub fn locate(&self, h: &Bits) -> Option<(usize, usize)> {
        self.lookup.get(h).map(|&i| (self.class_of[i], self.conjugator[i]))
    }

    pub fn members(&self, class: usize) -> Vec<Bits> {
        (0..self.subgroups.len()).filter(|&i| self.class_of[i] == class).map(|i| self.subgroups[i]).collect()
    }
}

/// Canonical 64-bit signature of an index set.
pub fn signature_of(b: &Bits) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in b.0 {
        h ^= w;
        h = h.wrapping_mul(0x0100_0000_01b3);
        h ^= h >> 29;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn d8() -> SmallGroup {
        let g = PermGroup::new(4, vec![parse_cycles("(1,2,3,4)", 4).unwrap(), parse_cycles("(1,3)", 4).unwrap()]).unwrap();
        SmallGroup::from_group(&g).unwrap()
    }

    #[test]
    fn d8_table() {
        let g = d8();
        assert_eq!(g.order(), 8);
        let t = SubgroupTable::build(&g, 2).unwrap();
        assert_eq!(t.len(), 10);
        assert_eq!(t.classes.len(), 8);
        let total: usize = t.classes.iter().map(|c| c.size).sum();
        assert_eq!(total, 10);
    }

    #[test]
    fn elementary_2_cubed() {
        let g = PermGroup::new(
            6,
            vec![parse_cycles("(1,2)", 6).unwrap(), parse_cycles("(3,4)", 6).unwrap(), parse_cycles("(5,6)", 6).unwrap()],
        )
        .unwrap();
        let s = SmallGroup::from_group(&g).unwrap();
        let t = SubgroupTable::build(&s, 2).unwrap();
        assert_eq!(t.len(), 16);
        assert_eq!(t.classes.len(), 16);
    }

    #[test]
    fn quotient_of_d8_by_center() {
        let g = d8();
        let z = g.center(&g.all());
        assert_eq!(z.len(), 2);
        let (q, proj) = g.quotient(&g.all(), &z);
        assert_eq!(q.order(), 4);
        assert!(q.is_elementary_abelian(&q.all()));
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
    }
}
