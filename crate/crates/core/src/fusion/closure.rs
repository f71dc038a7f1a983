//! Focal and hyperfocal subgroups, and `O_p(F)`.

use serde::Serialize;

use super::{FusionSystem, Positions};
use crate::error::Result;
use crate::group::PermGroup;
use crate::grp::normal::derived_subgroup;
use crate::grp::small::Bits;
use crate::perm::Perm;

#[derive(Clone, Debug, Serialize)]
pub struct ClosureResult {
    pub foc: Vec<usize>,
    pub hyp: Vec<usize>,
    pub foc_order: usize,
    pub hyp_order: usize,
    pub is_perfect: bool,
    /// Commutators `[s, φ]` that enlarged the focal subgroup, as elements.
    pub generators_log: Vec<usize>,
    #[serde(skip)]
    pub foc_bits: Bits,
    #[serde(skip)]
    pub hyp_bits: Bits,
}

/// Accumulates commutators into an `S`-normal subgroup.
struct Closure<'a> {
    f: &'a FusionSystem,
    cur: Bits,
    log: Vec<usize>,
}

impl Closure<'_> {
    fn add(&mut self, x: usize) {
        if self.cur.contains(x) {
            return;
        }
        let s = &self.f.s;
        let h = s.extend(&self.cur, &[x]);
        self.cur = s.normal_closure(&h, &s.all());
        self.log.push(x);
    }
}

fn p_prime_generators(a: &PermGroup, p: u64) -> Result<Vec<Perm>> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut cur = PermGroup::trivial(a.degree());
    let mut elems = a.elements()?;
    elems.sort();
    for x in elems {
        if x.order() % p != 0 && !cur.contains(&x) {
            gens.push(x);
            cur = a.subgroup(gens.clone());
        }
    }
    Ok(gens)
}

/// `foc(F)` and `hyp(F)` from `[P, Aut_F(P)]` and `[P, O^p(Aut_F(P))]`
/// over all `S`-class representatives `P`.
pub fn focal_hyperfocal(f: &FusionSystem) -> Result<ClosureResult> {
    let s = &f.s;
    let mut foc = Closure { f, cur: s.trivial(), log: Vec::new() };
    let mut hyp = Closure { f, cur: s.trivial(), log: Vec::new() };
    for class in &f.table.classes {
        if class.order == 1 {
            continue;
        }
        let pos = Positions::new(&class.rep);
        let a = f.aut_f(&class.rep);
        let pg = s.generating_set(&class.rep);
        for alpha in a.gens() {
            for &x in &pg {
                let y = pos.elems[alpha.image(pos.pos(x))];
                foc.add(s.mul(s.inv(x), y));
            }
        }
        for alpha in p_prime_generators(&a, f.p)? {
            for &x in &pg {
                let y = pos.elems[alpha.image(pos.pos(x))];
                hyp.add(s.mul(s.inv(x), y));
            }
        }
    }
    Ok(ClosureResult {
        foc: foc.cur.to_vec(),
        hyp: hyp.cur.to_vec(),
        foc_order: foc.cur.len(),
        hyp_order: hyp.cur.len(),
        is_perfect: foc.cur.len() == s.order(),
        generators_log: foc.log,
        foc_bits: foc.cur,
        hyp_bits: hyp.cur,
    })
}

/// Independent oracle: `S ∩ [G, G]`.
pub fn sylow_cap_derived(f: &FusionSystem) -> Bits {
    let d = derived_subgroup(&f.ambient);
    let mut b = Bits::empty();
    for x in f.s.all().iter() {
        if d.contains(&f.s.elements[x]) {
            b.insert(x);
        }
    }
    b
}

/// `O_p(F)`: the largest strongly closed `U ⊴ S` contained in every member
/// of `F^{fcr}` and invariant under its automizer. Found by scanning the
/// normal subgroups of `S` in decreasing order.
pub fn normal_core_op(f: &FusionSystem) -> Bits {
    let mut cands = f.normal_subgroups_of_s();
    cands.sort_by_key(|b| std::cmp::Reverse(b.len()));
    let gens = f.alperin_generators();
    'outer: for u in cands {
        if !f.is_strongly_closed(&u) {
            continue;
        }
        for (r, a) in &gens {
            if !u.is_subset(r) {
                continue 'outer;
            }
            let pos = Positions::new(r);
            for alpha in a.gens() {
                if !u.iter().all(|x| u.contains(pos.elems[alpha.image(pos.pos(x))])) {
                    continue 'outer;
                }
            }
        }
        return u;
    }
    f.s.trivial()
}

/// `Aut(S)` a `p`-group forces `F = O^{p'}(F)`; reports whether that
/// sufficient condition holds.
pub fn aut_s_is_p_group(f: &FusionSystem) -> Result<bool> {
    let a = crate::grp::iso::automorphism_group(&f.s)?;
    let mut n = a.order;
    while n % f.p as u128 == 0 {
        n /= f.p as u128;
    }
    Ok(n == 1)
}
