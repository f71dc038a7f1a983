//! Base and strong generating sets built by deterministic Schreier–Sims.

use rand::Rng;

use crate::perm::Perm;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// point -> index into `reps`, or NONE
    slot: Vec<u32>,
    reps: Vec<Perm>,
    reps_inv: Vec<Perm>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut slot = vec![NONE; degree];
        slot[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![Perm::identity(degree)],
            reps_inv: vec![Perm::identity(degree)],
        }
    }

    /// Extends the orbit after generators were appended.
    fn grow(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            let rep = self.reps[self.slot[pt] as usize].clone();
            for g in &self.gens {
                let im = g.image(pt);
                if self.slot[im] == NONE {
                    let r = rep.mul(g);
                    self.slot[im] = self.reps.len() as u32;
                    self.reps_inv.push(r.inv());
                    self.reps.push(r);
                    self.orbit.push(im);
                }
            }
            k += 1;
        }
    }

    fn rep(&self, pt: usize) -> Option<&Perm> {
        match self.slot[pt] {
            NONE => None,
            s => Some(&self.reps[s as usize]),
        }
    }

    fn rep_inv(&self, pt: usize) -> Option<&Perm> {
        match self.slot[pt] {
            NONE => None,
            s => Some(&self.reps_inv[s as usize]),
        }
    }
}

/// A stabilizer chain `G = G⁽¹⁾ ≥ G⁽²⁾ ≥ … ≥ 1` for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    /// Optional prescribed base order; new base points are taken from it first.
    prescribed: Vec<usize>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> StabChain {
        StabChain { degree, levels: Vec::new(), prescribed: Vec::new() }
    }

    /// Full deterministic Schreier–Sims.
    pub fn new(degree: usize, gens: &[Perm]) -> StabChain {
        let mut c = StabChain::trivial(degree);
        for g in gens {
            c.insert(g);
        }
        c.complete();
        c
    }

    /// Chain whose base starts with the given points, in order.
    pub fn with_base(degree: usize, gens: &[Perm], base: &[usize]) -> StabChain {
        let levels = base.iter().map(|&b| Level::new(degree, b)).collect();
        let mut c = StabChain { degree, levels, prescribed: base.to_vec() };
        for g in gens {
            c.insert(g);
        }
        c.complete();
        c
    }

    /// Builds a chain for `⟨gens⟩` when its order is known in advance.
    ///
    /// Random products are sifted until the transversal product reaches
    /// `order`; since that product is a lower bound for the true order the
    /// result is exact. Falls back to full Schreier–Sims if the target is not
    /// reached.
    pub fn with_order<R: Rng>(degree: usize, gens: &[Perm], order: u128, rng: &mut R) -> StabChain {
        let mut c = StabChain::trivial(degree);
        for g in gens {
            c.insert(g);
        }
        if gens.is_empty() || c.order() == order {
            return c;
        }
        let mut w = Perm::identity(degree);
        let mut misses = 0;
        while c.order() < order && misses < 64 {
            for _ in 0..3 {
                let g = &gens[rng.gen_range(0..gens.len())];
                w = w.mul(g);
            }
            if c.insert(&w) {
                misses = 0;
            } else {
                misses += 1;
            }
        }
        if c.order() != order {
            c.complete();
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn basic_orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    pub fn transversal_rep(&self, level: usize, pt: usize) -> Option<&Perm> {
        self.levels[level].rep(pt)
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Product of basic orbit lengths, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// Sifts from level `from`; returns the residue and the level where it stopped.
    fn sift_from(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, l) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(l.base);
            match l.rep_inv(b) {
                None => return (h, i),
                Some(ui) => h = h.mul(ui),
            }
        }
        (h, self.levels.len())
    }

    pub fn sift(&self, g: &Perm) -> (Perm, usize) {
        self.sift_from(g, 0)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g).0.is_identity()
    }

    fn next_base_point(&self, y: &Perm) -> usize {
        for &b in &self.prescribed {
            if y.image(b) != b && !self.levels.iter().any(|l| l.base == b) {
                return b;
            }
        }
        y.first_moved().expect("non-identity residue")
    }

    /// Adds `y` (fixing the first `upto` base points) to levels `from..=upto`.
    fn add_residue(&mut self, y: Perm, from: usize, upto: usize) {
        if upto == self.levels.len() {
            let b = self.next_base_point(&y);
            let mut lvl = Level::new(self.degree, b);
            if let Some(prev) = self.levels.last() {
                for g in &prev.gens {
                    if g.image(prev.base) == prev.base {
                        lvl.gens.push(g.clone());
                    }
                }
                lvl.grow();
            }
            self.levels.push(lvl);
        }
        for l in from..=upto {
            self.levels[l].gens.push(y.clone());
            self.levels[l].grow();
        }
    }

    /// Sifts `g` and records the residue as a new strong generator if it is
    /// not already a member. Does not restore the Schreier property.
    pub fn insert(&mut self, g: &Perm) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        let (y, j) = self.sift(g);
        if y.is_identity() {
            return false;
        }
        self.add_residue(y, 0, j);
        true
    }

    /// Restores the full Schreier property so that sifting decides membership.
    pub fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart = None;
            'scan: for k in 0..self.levels[lvl].orbit.len() {
                let pt = self.levels[lvl].orbit[k];
                for gi in 0..self.levels[lvl].gens.len() {
                    let l = &self.levels[lvl];
                    let g = &l.gens[gi];
                    let im = g.image(pt);
                    let h = l.rep(pt).unwrap().mul(g).mul(l.rep_inv(im).unwrap());
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.sift_from(&h, lvl + 1);
                    if !y.is_identity() {
                        self.add_residue(y, lvl + 1, j);
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Uniformly random element, as a product of random transversal entries.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for l in self.levels.iter().rev() {
            let pt = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = g.mul(l.rep(pt).unwrap());
        }
        g
    }

    /// Calls `f` on every element. Intended for groups of modest order.
    pub fn for_each_element<F: FnMut(&Perm)>(&self, mut f: F) {
        fn rec<F: FnMut(&Perm)>(c: &StabChain, level: isize, acc: &Perm, f: &mut F) {
            if level < 0 {
                f(acc);
                return;
            }
            let l = &c.levels[level as usize];
            for &pt in &l.orbit {
                let g = acc.mul(l.rep(pt).unwrap());
                rec(c, level - 1, &g, f);
            }
        }
        let id = Perm::identity(self.degree);
        rec(self, self.levels.len() as isize - 1, &id, &mut f);
    }

    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::with_capacity(self.order().min(1 << 24) as usize);
        self.for_each_element(|g| out.push(g.clone()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use std::collections::HashSet;

    fn closure(gens: &[Perm], n: usize) -> HashSet<Perm> {
        let mut seen = HashSet::new();
        let id = Perm::identity(n);
        let mut stack = vec![id.clone()];
        seen.insert(id);
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn s3_and_transposition() {
        let g = vec![parse_cycles("(1,2,3)", 3).unwrap(), parse_cycles("(1,2)", 3).unwrap()];
        assert_eq!(StabChain::new(3, &g).order(), 6);
        let t = vec![parse_cycles("(1,2)", 3).unwrap()];
        assert_eq!(StabChain::new(3, &t).order(), 2);
        assert_eq!(StabChain::new(4, &[]).order(), 1);
    }

    #[test]
    fn a10_order() {
        let g = vec![parse_cycles("(1,2,3)", 10).unwrap(), parse_cycles("(2,3,4,5,6,7,8,9,10)", 10).unwrap()];
        let c = StabChain::new(10, &g);
        assert_eq!(c.order(), 1_814_400);
        assert!(!c.contains(&parse_cycles("(1,2)", 10).unwrap()));
        assert!(c.contains(&parse_cycles("(1,2)(3,4)", 10).unwrap()));
    }

    #[test]
    fn matches_closure() {
        let gens = vec![parse_cycles("(1,2,3,4,5,6)", 7).unwrap(), parse_cycles("(1,7)(2,5)", 7).unwrap()];
        let c = StabChain::new(7, &gens);
        let els = closure(&gens, 7);
        assert_eq!(c.order(), els.len() as u128);
        let mut n = 0;
        c.for_each_element(|g| {
            assert!(els.contains(g));
            n += 1;
        });
        assert_eq!(n, els.len());
    }

    #[test]
    fn prescribed_base() {
        let gens = vec![parse_cycles("(3,4)", 5).unwrap(), parse_cycles("(1,2)", 5).unwrap()];
        let c = StabChain::with_base(5, &gens, &[0, 1, 2, 3, 4]);
        assert_eq!(c.base(), vec![0, 1, 2, 3, 4]);
        assert_eq!(c.orbit_sizes(), vec![2, 1, 2, 1, 1]);
        assert_eq!(c.order(), 4);
    }
}
