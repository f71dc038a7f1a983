//! Sylow subgroups by centralizer descent and normalizer climbing.

use rand_chacha::ChaCha8Rng;

use crate::error::{FswError, Result};
use crate::group::{p_part, PermGroup};
use crate::grp::local::{centralizer_element, class_size, normalizer};
use crate::perm::Perm;

/// Groups at most this large are handled by climbing normalizers directly.
const CLIMB_LIMIT: u128 = 200_000;
const TRIES: usize = 4000;

/// The p-part of `x`: a power of `x` generating its Sylow p-subgroup.
pub fn p_element(x: &Perm, p: u64) -> Perm {
    let mut o = x.order();
    while o.is_multiple_of(p) {
        o /= p;
    }
    x.pow(o as i64)
}

/// A power of `x` of order exactly `p`, if `p` divides the order of `x`.
pub fn element_of_order_p(x: &Perm, p: u64) -> Option<Perm> {
    let o = x.order();
    if !o.is_multiple_of(p) {
        return None;
    }
    Some(x.pow((o / p) as i64))
}

/// A Sylow p-subgroup of `g`, deterministic for a fixed seed.
pub fn sylow(g: &PermGroup, p: u64, seed: u64) -> Result<PermGroup> {
    let mut rng = g.rng(seed ^ 0x5e1f);
    sylow_rec(g, p, &mut rng)
}

fn sylow_rec(g: &PermGroup, p: u64, rng: &mut ChaCha8Rng) -> Result<PermGroup> {
    let order = g.order();
    let target = p_part(order, p as u128);
    if target == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    if target == order {
        return Ok(g.clone());
    }
    if order > CLIMB_LIMIT {
        // descend into the centralizer of a p-element whose centralizer
        // still has full p-part; such elements exist (the centre of a Sylow)
        for _ in 0..TRIES {
            let x = g.random_element(rng);
            let Some(z) = element_of_order_p(&p_element(&x, p), p) else { continue };
            let cls = class_size(g, &z)? as u128;
            if cls == 1 || !(order / cls).is_multiple_of(target) {
                continue;
            }
            let c = centralizer_element(g, &z)?;
            return sylow_rec(&c, p, rng);
        }
    }
    climb(g, p, target, rng)
}

/// Grows a p-subgroup inside successive normalizers until it is Sylow.
fn climb(g: &PermGroup, p: u64, target: u128, rng: &mut ChaCha8Rng) -> Result<PermGroup> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut cur = PermGroup::trivial(g.degree());
    let mut ambient = g.clone();
    while cur.order() < target {
        let mut grown = false;
        for i in 0..TRIES {
            let x = if i < ambient.gens().len() { ambient.gens()[i].clone() } else { ambient.random_element(rng) };
            let y = p_element(&x, p);
            if y.is_identity() || cur.contains(&y) {
                continue;
            }
            gens.push(y);
            cur = g.subgroup(gens.clone());
            grown = true;
            break;
        }
        if !grown {
            return Err(FswError::Invalid("Sylow climb did not find a p-element".into()));
        }
        if cur.order() < target {
            ambient = normalizer(g, &cur)?;
        }
    }
    let order = cur.order();
    Ok(PermGroup::with_order(g.degree(), gens, order))
}

/// Whether `x` is a p-element.
pub fn is_p_element(x: &Perm, p: u64) -> bool {
    let mut o = x.order();
    while o.is_multiple_of(p) {
        o /= p;
    }
    o == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    #[test]
    fn sylow_of_s4_and_a10() {
        let s4 = PermGroup::new(4, vec![parse_cycles("(1,2,3,4)", 4).unwrap(), parse_cycles("(1,2)", 4).unwrap()]).unwrap();
        let p = sylow(&s4, 2, 1).unwrap();
        assert_eq!(p.order(), 8);
        assert!(s4.contains_group(&p));
        assert_eq!(sylow(&s4, 3, 1).unwrap().order(), 3);
        let a10 = PermGroup::new(10, vec![parse_cycles("(1,2,3)", 10).unwrap(), parse_cycles("(2,3,4,5,6,7,8,9,10)", 10).unwrap()]).unwrap();
        let s = sylow(&a10, 2, 1).unwrap();
        assert_eq!(s.order(), 128);
        assert!(a10.contains_group(&s));
        assert_eq!(sylow(&a10, 7, 1).unwrap().order(), 7);
    }

    #[test]
    fn odd_order_group() {
        let c3 = PermGroup::new(3, vec![parse_cycles("(1,2,3)", 3).unwrap()]).unwrap();
        assert!(sylow(&c3, 2, 0).unwrap().is_trivial());
    }
}
