//! Transfer consequences for perfect systems, and Burnside fusion.

use std::collections::HashMap;

use serde::Serialize;

use super::{focal_hyperfocal, FusionSystem, Positions};
use crate::error::{FswError, Result};
use crate::grp::small::Bits;
use crate::ptheory::thompson_data;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferMode {
    Cyclic,
    LinInd,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub index: usize,
    /// Whether the independence hypothesis holds (always true in cyclic mode).
    pub hypothesis: bool,
    /// Elements `u ∈ S − T` examined, each with a fully centralized
    /// conjugate in `T` when one exists.
    pub witnesses: Vec<(usize, Option<usize>)>,
    pub conclusion: bool,
}

/// Order of `xT` in `S/T`.
fn coset_order(f: &FusionSystem, t: &Bits, x: usize) -> usize {
    let s = &f.s;
    let mut y = x;
    let mut k = 1;
    while !t.contains(y) {
        y = s.mul(y, x);
        k += 1;
    }
    k
}

pub(crate) fn is_cyclic_quotient(f: &FusionSystem, t: &Bits) -> bool {
    let idx = f.s.order() / t.len();
    f.s.all().iter().any(|x| coset_order(f, t, x) == idx)
}

fn fully_centralized_conjugate_in(f: &FusionSystem, u: usize, t: &Bits) -> Option<usize> {
    let cls = f.element_class(u);
    let m = cls.iter().map(|&y| f.cent_order[y]).max().unwrap();
    cls.into_iter().find(|&y| t.contains(y) && f.cent_order[y] == m)
}

/// Checks the transfer conclusion for `T ⊴ S` with `S/T` cyclic (least
/// order elements of `S − T`) or abelian (involutions of `S − T`, under the
/// linear independence hypothesis).
pub fn transfer_check(f: &FusionSystem, t: &Bits, mode: TransferMode) -> Result<TransferReport> {
    let s = &f.s;
    let all = s.all();
    if t.len() == s.order() || !s.is_normal(t, &all) {
        return Err(FswError::Precondition("T must be a proper normal subgroup of S".into()));
    }
    if !focal_hyperfocal(f)?.is_perfect {
        return Err(FswError::Precondition("the fusion system is not perfect".into()));
    }
    let outside: Vec<usize> = all.minus(t).to_vec();
    let (hypothesis, us) = match mode {
        TransferMode::Cyclic => {
            if !is_cyclic_quotient(f, t) {
                return Err(FswError::Precondition("S/T is not cyclic".into()));
            }
            let m = outside.iter().map(|&x| s.elt_order(x)).min().unwrap();
            (true, outside.iter().copied().filter(|&x| s.elt_order(x) == m).collect::<Vec<_>>())
        }
        TransferMode::LinInd => {
            if !s.commutator(&all, &all).is_subset(t) {
                return Err(FswError::Precondition("S/T is not abelian".into()));
            }
            let invs: Vec<usize> = outside.iter().copied().filter(|&x| s.elt_order(x) == 2).collect();
            let fc: Vec<usize> = invs.iter().copied().filter(|&x| f.element_fully_centralized(x)).collect();
            // distinct cosets vT, and the span they generate
            let mut cosets: Vec<Bits> = Vec::new();
            for &v in &fc {
                let coset: Bits = {
                    let mut b = Bits::empty();
                    for y in t.iter() {
                        b.insert(s.mul(y, v));
                    }
                    b
                };
                if !cosets.contains(&coset) {
                    cosets.push(coset);
                }
            }
            let reps: Vec<usize> = cosets.iter().map(|c| c.iter().next().unwrap()).collect();
            let span = s.extend(t, &reps);
            let independent = span.len() == t.len() << cosets.len();
            (independent, invs)
        }
    };
    let witnesses: Vec<(usize, Option<usize>)> =
        us.iter().map(|&u| (u, fully_centralized_conjugate_in(f, u, t))).collect();
    let conclusion = witnesses.iter().all(|(_, w)| w.is_some());
    Ok(TransferReport { index: s.order() / t.len(), hypothesis, witnesses, conclusion })
}

#[derive(Clone, Debug, Serialize)]
pub struct BurnsideReport {
    pub w_order: usize,
    pub weakly_closed: bool,
    pub subgroups_checked: usize,
    pub holds: bool,
}

/// For `W` weakly closed: `F`-conjugate subgroups of `Z(W)` are
/// `N_G(W)`-conjugate. With `w = None`, uses `J(S)`.
pub fn burnside_check(f: &FusionSystem, w: Option<&Bits>) -> Result<BurnsideReport> {
    let s = &f.s;
    let w = match w {
        Some(w) => *w,
        None => thompson_data(s, &s.all()).j,
    };
    let c = f.fclass_of(&w);
    let weakly = f.fclasses[c].flags.weakly_closed;
    let z = s.center(&w);
    let subs: Vec<Bits> = f.table.subgroups.iter().filter(|h| h.is_subset(&z)).copied().collect();
    let index: HashMap<Bits, usize> = subs.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    // N_G(W) acts on Z(W) through Aut_F(W); conjugate W's automizer from
    // the representative
    let pos = Positions::new(&w);
    let aut = f.aut_f(&w);
    let mut orbit_of = vec![usize::MAX; subs.len()];
    let mut norbits = 0;
    for i in 0..subs.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        orbit_of[i] = norbits;
        let mut queue = vec![i];
        let mut k = 0;
        while k < queue.len() {
            let h = subs[queue[k]];
            for a in aut.gens() {
                let mut img = Bits::empty();
                for x in h.iter() {
                    img.insert(pos.elems[a.image(pos.pos(x))]);
                }
                let j = index[&img];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = norbits;
                    queue.push(j);
                }
            }
            k += 1;
        }
        norbits += 1;
    }
    let mut holds = true;
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            if subs[i].len() == subs[j].len() && f.fclass_of(&subs[i]) == f.fclass_of(&subs[j]) && orbit_of[i] != orbit_of[j] {
                holds = false;
            }
        }
    }
    Ok(BurnsideReport { w_order: w.len(), weakly_closed: weakly, subgroups_checked: subs.len(), holds })
}
