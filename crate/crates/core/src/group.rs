//! Permutation groups given by generators, with a lazily built chain.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::StabChain;
use crate::error::{FswError, Result};
use crate::perm::{parse_cycles, Perm};

/// Default cap on explicit element enumeration.
pub const ELEMENT_CAP: u128 = 2_000_000;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// Group generated by `gens`; identity generators are dropped.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(FswError::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(PermGroup::from_gens(degree, gens))
    }

    pub(crate) fn from_gens(degree: usize, gens: Vec<Perm>) -> PermGroup {
        let mut uniq: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        PermGroup { degree, gens: uniq, chain: OnceLock::new() }
    }

    /// Group whose chain is already known.
    pub fn with_chain(degree: usize, gens: Vec<Perm>, chain: StabChain) -> PermGroup {
        let g = PermGroup::from_gens(degree, gens);
        let _ = g.chain.set(chain);
        g
    }

    /// Builds the chain using a known order (seeded, verified by the order bound).
    pub fn with_order(degree: usize, gens: Vec<Perm>, order: u128) -> PermGroup {
        let g = PermGroup::from_gens(degree, gens);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ order as u64);
        let chain = StabChain::with_order(degree, &g.gens, order, &mut rng);
        let _ = g.chain.set(chain);
        g
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_gens(degree, Vec::new())
    }

    /// Parses `degree: n` followed by one cycle-notation generator per line.
    pub fn parse(text: &str) -> Result<PermGroup> {
        let mut degree = None;
        let mut gens = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("degree:") {
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| FswError::Parse(format!("bad degree line: {line}")))?;
                degree = Some(n);
                continue;
            }
            let n = degree.ok_or_else(|| FswError::Parse("missing 'degree:' header".into()))?;
            gens.push(parse_cycles(line, n)?);
        }
        let n = degree.ok_or_else(|| FswError::Parse("missing 'degree:' header".into()))?;
        PermGroup::new(n, gens)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("degree: {}\n", self.degree);
        for g in &self.gens {
            s.push_str(&format!("{g}\n"));
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.gens))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_group(&self, h: &PermGroup) -> bool {
        h.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, h: &PermGroup) -> bool {
        self.order() == h.order() && self.contains_group(h)
    }

    pub fn is_normalized_by(&self, g: &Perm) -> bool {
        self.gens.iter().all(|h| self.contains(&h.conj(g)))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        g.gens.iter().all(|x| self.is_normalized_by(x))
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if a.mul(b) != b.mul(a) {
                    return false;
                }
            }
        }
        true
    }

    /// All elements, refusing groups above [`ELEMENT_CAP`].
    pub fn elements(&self) -> Result<Vec<Perm>> {
        if self.order() > ELEMENT_CAP {
            return Err(FswError::cap("element enumeration", ELEMENT_CAP as u64));
        }
        Ok(self.chain().elements())
    }

    pub fn element_set(&self) -> Result<HashSet<Perm>> {
        Ok(self.elements()?.into_iter().collect())
    }

    /// Subgroup generated by `gens` (which must lie in this group's degree).
    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        PermGroup::from_gens(self.degree, gens)
    }

    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let gens = self.gens.iter().map(|h| h.conj(g)).collect();
        match self.chain.get() {
            Some(c) => PermGroup::with_order(self.degree, gens, c.order()),
            None => PermGroup::from_gens(self.degree, gens),
        }
    }

    /// Seeded random element source for this group.
    pub fn rng(&self, seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Perm {
        self.chain().random_element(rng)
    }
}

/// Power of `p` dividing `n`.
pub fn p_part(n: u128, p: u128) -> u128 {
    let mut o = n;
    let mut part = 1;
    while o > 0 && o.is_multiple_of(p) {
        o /= p;
        part *= p;
    }
    part
}

/// `ν_p(n)`.
pub fn valuation(n: u128, p: u128) -> u32 {
    let mut n = n;
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_group_file() {
        let g = PermGroup::parse("degree: 4\n(1,2,3,4)\n(1,3)\n").unwrap();
        assert_eq!(g.order(), 8);
        assert!(PermGroup::parse("(1,2)\n").is_err());
        let round = PermGroup::parse(&g.to_text()).unwrap();
        assert!(round.equals(&g));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(1_814_400, 2), 7);
        assert_eq!(p_part(6_065_280, 2), 128);
    }
}
