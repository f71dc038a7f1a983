//! Right cosets `Hg` of a subgroup, keyed by their lexicographically least
//! element, and the action of the ambient group on them.

use std::collections::HashMap;

use crate::chain::StabChain;
use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Default cap on the number of cosets enumerated.
pub const COSET_CAP: usize = 1_000_000;

pub struct CosetSpace {
    chain: StabChain,
    reps: Vec<Perm>,
    index: HashMap<Perm, u32>,
    /// Action of each generator of the ambient group, as coset index maps.
    gen_action: Vec<Vec<u32>>,
}

impl CosetSpace {
    /// Enumerates the right cosets of `h` in `g`.
    pub fn new(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<CosetSpace> {
        let n = g.degree();
        let base: Vec<usize> = (0..n).collect();
        let chain = StabChain::with_base(n, h.gens(), &base);
        let expected = g.order() / chain.order();
        if expected > cap as u128 || expected > u32::MAX as u128 {
            return Err(FswError::cap("coset enumeration", cap as u64));
        }
        let mut space = CosetSpace { chain, reps: Vec::new(), index: HashMap::new(), gen_action: Vec::new() };
        let id = g.identity();
        space.index.insert(space.canonical(&id), 0);
        space.reps.push(id);
        let mut k = 0;
        let mut action: Vec<Vec<u32>> = vec![Vec::new(); g.gens().len()];
        while k < space.reps.len() {
            for (j, s) in g.gens().iter().enumerate() {
                let y = space.reps[k].mul(s);
                let key = space.canonical(&y);
                let next = space.reps.len() as u32;
                let idx = *space.index.entry(key).or_insert(next);
                if idx == next {
                    if space.reps.len() >= cap {
                        return Err(FswError::cap("coset enumeration", cap as u64));
                    }
                    space.reps.push(y);
                }
                action[j].push(idx);
            }
            k += 1;
        }
        if space.reps.len() as u128 != expected {
            return Err(FswError::Precondition("subgroup is not contained in the group".into()));
        }
        space.gen_action = action;
        Ok(space)
    }

    /// Least element of the coset `Hg`.
    pub fn canonical(&self, g: &Perm) -> Perm {
        let mut cur = g.clone();
        for lvl in 0..self.chain.num_levels() {
            let orbit = self.chain.basic_orbit(lvl);
            if orbit.len() == 1 {
                continue;
            }
            let best = *orbit.iter().min_by_key(|&&b| cur.image(b)).unwrap();
            let u = self.chain.transversal_rep(lvl, best).unwrap();
            cur = u.mul(&cur);
        }
        cur
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> &Perm {
        &self.reps[i]
    }

    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    /// Index of the coset `Hx`.
    pub fn locate(&self, x: &Perm) -> Option<usize> {
        self.index.get(&self.canonical(x)).map(|&i| i as usize)
    }

    /// Action of the `j`-th ambient generator.
    pub fn generator_action(&self, j: usize) -> &[u32] {
        &self.gen_action[j]
    }

    /// Action of an arbitrary element `x` of the ambient group.
    pub fn action(&self, x: &Perm) -> Vec<u32> {
        (0..self.reps.len()).map(|i| self.locate(&self.reps[i].mul(x)).expect("element of the ambient group") as u32).collect()
    }

    /// The coset action of `x` as a permutation, when the index fits.
    pub fn perm_of(&self, x: &Perm) -> Result<Perm> {
        if self.reps.len() > u16::MAX as usize {
            return Err(FswError::cap("coset permutation degree", u16::MAX as u64));
        }
        Ok(Perm::from_raw(self.action(x).into_iter().map(|i| i as u16).collect()))
    }

    /// Image of the ambient group in its coset action.
    pub fn action_group(&self) -> Result<PermGroup> {
        if self.reps.len() > u16::MAX as usize {
            return Err(FswError::cap("coset permutation degree", u16::MAX as u64));
        }
        let gens = self.gen_action.iter().map(|a| Perm::from_raw(a.iter().map(|&i| i as u16).collect())).collect();
        Ok(PermGroup::from_gens(self.reps.len(), gens))
    }
}

/// Composes index maps: first `a`, then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&i| b[i as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    #[test]
    fn cosets_of_s3_in_s4() {
        let g = PermGroup::new(4, vec![parse_cycles("(1,2,3,4)", 4).unwrap(), parse_cycles("(1,2)", 4).unwrap()]).unwrap();
        let h = PermGroup::new(4, vec![parse_cycles("(1,2,3)", 4).unwrap(), parse_cycles("(1,2)", 4).unwrap()]).unwrap();
        let cs = CosetSpace::new(&g, &h, 100).unwrap();
        assert_eq!(cs.len(), 4);
        let img = cs.action_group().unwrap();
        assert_eq!(img.order(), 24);
        let x = parse_cycles("(1,2)(3,4)", 4).unwrap();
        for i in 0..4 {
            let j = cs.action(&x)[i] as usize;
            assert_eq!(cs.locate(&cs.rep(i).mul(&x)), Some(j));
        }
    }
}
