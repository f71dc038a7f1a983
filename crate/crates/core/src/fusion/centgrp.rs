//! `C_S(E)` for the system `E = F_{S∩N}(N)` of a normal subgroup `N ⊴ G`.

use serde::Serialize;

use super::FusionSystem;
use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::grp::local::normalizer;
use crate::grp::normal::p_prime_core;
use crate::grp::small::Bits;
use crate::perm::Perm;

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerReport {
    /// `C_S(E)` as elements of `S`.
    pub subgroup: Vec<usize>,
    pub order: usize,
    /// Number of distinct groups `N_N(V)` used, `V ∈ E^{fc}`.
    pub normalizers: usize,
    #[serde(skip)]
    pub bits: Bits,
}

/// The largest `Y ≤ S` with `[H, Y] ≤ O_{p'}(H)` for every `H = N_N(V)`,
/// `V` fully centralized and centric in `E`.
///
/// An element `y` qualifies for `H` exactly when it normalizes `H` and fixes
/// every generator modulo `O_{p'}(H)`, so `Y` is computed elementwise.
pub fn centralizer_of_normal_subsystem(f: &FusionSystem, n: &PermGroup) -> Result<CentralizerReport> {
    let g = f.ambient();
    if !g.contains_group(n) || !n.is_normal_in(g) {
        return Err(FswError::Precondition("N is not normal in G".into()));
    }
    let s = f.small();
    let mut t = Bits::empty();
    for x in s.all().iter() {
        if n.contains(&s.elements[x]) {
            t.insert(x);
        }
    }
    let tg = s.perm_subgroup(&t);
    let e = FusionSystem::with_sylow(n, &tg, f.prime())?;
    let es = e.small();
    let mut hs: Vec<(PermGroup, PermGroup)> = Vec::new();
    for fc in e.fclasses() {
        if !fc.flags.centric {
            continue;
        }
        let cent = |b: &Bits| es.centralizer(b).len();
        let best = fc.members.iter().map(|&j| cent(&e.table().classes[j].rep)).max().unwrap();
        for &j in &fc.members {
            if cent(&e.table().classes[j].rep) != best {
                continue;
            }
            for v in e.table().members(j) {
                let vg = es.perm_subgroup(&v);
                let h = normalizer(n, &vg)?;
                if hs.iter().any(|(k, _)| k.equals(&h)) {
                    continue;
                }
                let o = p_prime_core(&h, f.prime())?;
                hs.push((h, o));
            }
        }
    }
    let qualifies = |y: &Perm| {
        hs.iter().all(|(h, o)| {
            h.gens().iter().all(|x| {
                let xy = x.conj(y);
                h.contains(&xy) && o.contains(&x.inv().mul(&xy))
            })
        })
    };
    let mut y = Bits::empty();
    for x in s.all().iter() {
        if qualifies(&s.elements[x]) {
            y.insert(x);
        }
    }
    debug_assert_eq!(s.closure(&y.to_vec()), y);
    Ok(CentralizerReport { subgroup: y.to_vec(), order: y.len(), normalizers: hs.len(), bits: y })
}
