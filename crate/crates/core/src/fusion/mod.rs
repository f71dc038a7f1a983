//! Fusion systems `F_S(G)` of finite permutation groups.
//!
//! Subgroups of `S` are tabulated up to `S`-conjugacy. A subgroup `P ≤ S`
//! fixes the coset `Sr` exactly when `P^{r⁻¹} ≤ S`, so scanning the fixed
//! cosets of each class representative yields every `G`-conjugate of it
//! inside `S` together with its normalizer modulo `N_S(P)`. The resulting
//! data (a transport element per `S`-class and the automizer of one fully
//! normalized representative per `F`-class) is all later queries use.

mod centgrp;
mod closure;
mod saturation;
mod transfer;

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{FswError, Result};
use crate::group::{p_part, PermGroup};
use crate::grp::cosets::{compose, CosetSpace, COSET_CAP};
use crate::grp::iso::describe;
use crate::grp::local;
use crate::grp::normal::{normal_closure_of, quotient_group};
use crate::grp::small::{Bits, SmallGroup, SubgroupTable};
use crate::grp::sylow::sylow;
use crate::perm::Perm;

pub use centgrp::{centralizer_of_normal_subsystem, CentralizerReport};
pub use closure::{aut_s_is_p_group, focal_hyperfocal, normal_core_op, sylow_cap_derived, ClosureResult};
pub use saturation::{saturation_check, Axiom, SaturationReport, Violation};
pub use transfer::{burnside_check, transfer_check, BurnsideReport, TransferMode, TransferReport};

/// Default seed for Sylow searches.
pub const DEFAULT_SEED: u64 = 1;

/// A subgroup of `S` with its elements listed in increasing index order,
/// so that automorphisms can be written as permutations of positions.
#[derive(Clone, Debug)]
pub struct Positions {
    pub bits: Bits,
    pub elems: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl Positions {
    pub fn new(bits: &Bits) -> Positions {
        let elems = bits.to_vec();
        let pos = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Positions { bits: *bits, elems, pos }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn pos(&self, e: usize) -> usize {
        self.pos[&e]
    }

    pub fn try_pos(&self, e: usize) -> Option<usize> {
        self.pos.get(&e).copied()
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Flags {
    pub fully_normalized: bool,
    pub fully_centralized: bool,
    pub fully_automized: bool,
    pub centric: bool,
    pub radical: bool,
    pub weakly_closed: bool,
    pub strongly_closed: bool,
}

/// One `F`-conjugacy class of subgroups.
#[derive(Debug)]
pub struct FClass {
    /// `S`-classes of the subgroup table merged into this class.
    pub members: Vec<usize>,
    /// The fully normalized member used as representative.
    pub rep: usize,
    pub positions: Positions,
    aut: PermGroup,
    aut_elements: OnceLock<Vec<Perm>>,
    pub flags: Flags,
}

impl FClass {
    /// `Aut_F(rep)` acting on the positions of the representative.
    pub fn aut(&self) -> &PermGroup {
        &self.aut
    }
}

struct SClassData {
    fclass: usize,
    /// `c` with `rep^c` the representative of the `F`-class.
    transport: Perm,
    /// Elements of `N_G(rep)` inducing generators of `Aut_F(rep)`.
    normalizer_gens: Vec<Perm>,
}

pub struct FusionSystem {
    ambient: PermGroup,
    sylow: PermGroup,
    p: u64,
    s: SmallGroup,
    table: SubgroupTable,
    sclasses: Vec<SClassData>,
    fclasses: Vec<FClass>,
    /// `F`-class of elements, as an id per element of `S`.
    elem_fclass: Vec<usize>,
    cent_order: Vec<usize>,
    group_backed: bool,
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let n = uf[y];
        uf[y] = r;
        y = n;
    }
    r
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        uf[hi] = lo;
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Normal core of a Sylow `p`-subgroup, i.e. `O_p(A)`.
pub(crate) fn op_core(a: &PermGroup, p: u64) -> Result<PermGroup> {
    if !a.order().is_multiple_of(p as u128) {
        return Ok(PermGroup::trivial(a.degree()));
    }
    let p0 = sylow(a, p, DEFAULT_SEED)?;
    let mut gens = Vec::new();
    let mut core = PermGroup::trivial(a.degree());
    for x in p0.elements()? {
        if core.contains(&x) {
            continue;
        }
        // the class of x stays in P0 exactly when x lies in every conjugate
        let mut orbit = vec![x.clone()];
        let mut seen: std::collections::HashSet<Perm> = orbit.iter().cloned().collect();
        let mut ok = true;
        let mut k = 0;
        while ok && k < orbit.len() {
            for g in a.gens() {
                let y = orbit[k].conj(g);
                if !p0.contains(&y) {
                    ok = false;
                    break;
                }
                if seen.insert(y.clone()) {
                    orbit.push(y);
                }
            }
            k += 1;
        }
        if ok {
            gens.push(x);
            core = a.subgroup(gens.clone());
        }
    }
    Ok(core)
}

impl FusionSystem {
    /// `F_S(G)` for a Sylow `p`-subgroup found with the default seed.
    pub fn build(g: &PermGroup, p: u64) -> Result<FusionSystem> {
        let s = sylow(g, p, DEFAULT_SEED)?;
        FusionSystem::with_sylow(g, &s, p)
    }

    /// `F_S(G)` for a given Sylow subgroup `s`.
    pub fn with_sylow(g: &PermGroup, sylow_group: &PermGroup, p: u64) -> Result<FusionSystem> {
        if p_part(g.order(), p as u128) != sylow_group.order() || !g.contains_group(sylow_group) {
            return Err(FswError::Precondition("not a Sylow subgroup".into()));
        }
        let s = SmallGroup::from_group(sylow_group)?;
        let table = SubgroupTable::build(&s, p as u32)?;
        let cosets = CosetSpace::new(g, sylow_group, COSET_CAP)?;
        let m = cosets.len();

        // fixed cosets of every element of S
        let mut actions: Vec<Option<Vec<u32>>> = vec![None; s.order()];
        actions[0] = Some((0..m as u32).collect());
        let gen_actions: Vec<(usize, Vec<u32>)> =
            s.gens.iter().map(|&x| (x, cosets.action(&s.elements[x]))).collect();
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for (gx, ga) in &gen_actions {
                let y = s.mul(x, *gx);
                if actions[y].is_none() {
                    actions[y] = Some(compose(actions[x].as_ref().unwrap(), ga));
                    queue.push(y);
                }
            }
            k += 1;
        }
        let fixed: Vec<Vec<u32>> = actions
            .iter()
            .map(|a| {
                let a = a.as_ref().expect("generators of S reach every element");
                (0..m as u32).filter(|&i| a[i as usize] == i).collect()
            })
            .collect();
        drop(actions);
        let rinv: Vec<Perm> = cosets.reps().iter().map(|r| r.inv()).collect();

        let nc = table.classes.len();
        let mut edges: Vec<Vec<(usize, Perm)>> = vec![Vec::new(); nc];
        let mut norm_gens: Vec<Vec<Perm>> = vec![Vec::new(); nc];
        let mut auts: Vec<PermGroup> = Vec::with_capacity(nc);
        for i in 0..nc {
            let rep = table.classes[i].rep;
            let pos = Positions::new(&rep);
            let induced = |g: &Perm| -> Perm {
                let img: Vec<usize> =
                    pos.elems.iter().map(|&e| pos.pos(s.index_of(&s.elements[e].conj(g)).unwrap())).collect();
                Perm::from_images(img).unwrap()
            };
            let mut agens: Vec<Perm> = Vec::new();
            let mut aut = PermGroup::trivial(pos.len());
            let consider = |g: Perm, agens: &mut Vec<Perm>, aut: &mut PermGroup, ng: &mut Vec<Perm>| {
                let a = induced(&g);
                if !aut.contains(&a) {
                    agens.push(a);
                    *aut = PermGroup::from_gens(pos.len(), agens.clone());
                    ng.push(g);
                }
            };
            let nsg = s.generating_set(&table.classes[i].normalizer);
            for &u in &nsg {
                consider(s.elements[u].clone(), &mut agens, &mut aut, &mut norm_gens[i]);
            }
            if rep.len() > 1 {
                let pg = s.generating_set(&rep);
                let mut fix = fixed[pg[0]].clone();
                for &x in &pg[1..] {
                    fix = intersect_sorted(&fix, &fixed[x]);
                }
                let mut seen_target = vec![false; nc];
                seen_target[i] = true;
                for &r in &fix {
                    let ri = &rinv[r as usize];
                    let mut img = Bits::empty();
                    for &e in &pos.elems {
                        img.insert(s.index_of(&s.elements[e].conj(ri)).unwrap());
                    }
                    let (j, t) = table.locate(&img).expect("conjugate lies in the table");
                    let g = ri.mul(&s.elements[s.inv(t)]);
                    if j == i {
                        consider(g, &mut agens, &mut aut, &mut norm_gens[i]);
                    } else if !seen_target[j] {
                        seen_target[j] = true;
                        edges[i].push((j, g));
                    }
                }
            }
            auts.push(aut);
        }

        // merge S-classes
        let mut uf: Vec<usize> = (0..nc).collect();
        for i in 0..nc {
            for (j, _) in &edges[i] {
                union(&mut uf, i, *j);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut comp_of: HashMap<usize, usize> = HashMap::new();
        for i in 0..nc {
            let r = find(&mut uf, i);
            let c = *comp_of.entry(r).or_insert_with(|| {
                comps.push(Vec::new());
                comps.len() - 1
            });
            comps[c].push(i);
        }
        // undirected adjacency for transports
        let mut adj: Vec<Vec<(usize, Perm)>> = vec![Vec::new(); nc];
        for i in 0..nc {
            for (j, g) in &edges[i] {
                // rep_i^g = rep_j
                adj[i].push((*j, g.clone()));
                adj[*j].push((i, g.inv()));
            }
        }
        let id = g.identity();
        let mut transport: Vec<Option<Perm>> = vec![None; nc];
        let mut fclass_of = vec![0usize; nc];
        let mut fclasses: Vec<FClass> = Vec::new();
        let mut auts: Vec<Option<PermGroup>> = auts.into_iter().map(Some).collect();
        for (c, members) in comps.iter().enumerate() {
            let rep = *members
                .iter()
                .max_by(|&&a, &&b| {
                    table.classes[a].normalizer.len().cmp(&table.classes[b].normalizer.len()).then(b.cmp(&a))
                })
                .unwrap();
            transport[rep] = Some(id.clone());
            let mut queue = vec![rep];
            let mut k = 0;
            while k < queue.len() {
                let j = queue[k];
                let cj = transport[j].clone().unwrap();
                for (l, g) in &adj[j] {
                    if transport[*l].is_none() {
                        // rep_j^g = rep_l, so rep_l^{g⁻¹ c_j} = R
                        transport[*l] = Some(g.inv().mul(&cj));
                        queue.push(*l);
                    }
                }
                k += 1;
            }
            for &j in members {
                fclass_of[j] = c;
            }
            let positions = Positions::new(&table.classes[rep].rep);
            fclasses.push(FClass {
                members: members.clone(),
                rep,
                positions,
                aut: auts[rep].take().unwrap(),
                aut_elements: OnceLock::new(),
                flags: Flags::default(),
            });
        }
        let sclasses: Vec<SClassData> = (0..nc)
            .map(|i| SClassData {
                fclass: fclass_of[i],
                transport: transport[i].take().expect("every class is reached"),
                normalizer_gens: std::mem::take(&mut norm_gens[i]),
            })
            .collect();

        // element fusion
        let eclasses = s.element_classes(&s.all());
        let mut ecls_of = vec![0usize; s.order()];
        for (c, cl) in eclasses.iter().enumerate() {
            for &x in cl {
                ecls_of[x] = c;
            }
        }
        let mut euf: Vec<usize> = (0..eclasses.len()).collect();
        for (c, cl) in eclasses.iter().enumerate() {
            let x = cl[0];
            if x == 0 {
                continue;
            }
            for &r in &fixed[x] {
                let y = s.index_of(&s.elements[x].conj(&rinv[r as usize])).unwrap();
                union(&mut euf, c, ecls_of[y]);
            }
        }
        let elem_fclass: Vec<usize> = (0..s.order()).map(|x| find(&mut euf, ecls_of[x])).collect();
        let cent_order: Vec<usize> =
            (0..s.order()).map(|x| (0..s.order()).filter(|&y| s.mul(x, y) == s.mul(y, x)).count()).collect();

        let mut f = FusionSystem {
            ambient: g.clone(),
            sylow: sylow_group.clone(),
            p,
            s,
            table,
            sclasses,
            fclasses,
            elem_fclass,
            cent_order,
            group_backed: true,
        };
        f.refresh_flags()?;
        Ok(f)
    }

    fn refresh_flags(&mut self) -> Result<()> {
        let mut all = Vec::new();
        for c in 0..self.fclasses.len() {
            all.push(self.compute_flags(c)?);
        }
        for (c, fl) in all.into_iter().enumerate() {
            self.fclasses[c].flags = fl;
        }
        Ok(())
    }

    fn compute_flags(&self, c: usize) -> Result<Flags> {
        let fc = &self.fclasses[c];
        let tc = &self.table.classes;
        let rep = fc.positions.bits;
        let cent = |j: usize| self.s.centralizer(&tc[j].rep).and(&self.s.all());
        let max_n = fc.members.iter().map(|&j| tc[j].normalizer.len()).max().unwrap();
        let max_c = fc.members.iter().map(|&j| cent(j).len()).max().unwrap();
        let autf = fc.aut.order();
        let auts = self.aut_s(c).order();
        let inn = (rep.len() / self.s.center(&rep).len()) as u128;
        let op = op_core(&fc.aut, self.p)?.order();
        let strongly = rep.iter().all(|x| {
            let id = self.elem_fclass[x];
            (0..self.s.order()).all(|y| self.elem_fclass[y] != id || rep.contains(y))
        });
        Ok(Flags {
            fully_normalized: tc[fc.rep].normalizer.len() == max_n,
            fully_centralized: cent(fc.rep).len() == max_c,
            fully_automized: auts == p_part(autf, self.p as u128),
            centric: fc.members.iter().all(|&j| cent(j).is_subset(&tc[j].rep)),
            radical: op == inn,
            weakly_closed: fc.members.len() == 1 && tc[fc.members[0]].size == 1,
            strongly_closed: strongly,
        })
    }

    /// `Aut_S(rep)` of an `F`-class, on positions.
    pub fn aut_s(&self, c: usize) -> PermGroup {
        let fc = &self.fclasses[c];
        let n = self.table.classes[fc.rep].normalizer;
        let gens = self.s.generating_set(&n).into_iter().map(|u| self.induced(&fc.positions, &self.s.elements[u])).collect();
        PermGroup::from_gens(fc.positions.len(), gens)
    }

    /// Permutation of positions induced by conjugation with `g`, which must
    /// normalize the subgroup.
    pub(crate) fn induced(&self, pos: &Positions, g: &Perm) -> Perm {
        let img: Vec<usize> =
            pos.elems.iter().map(|&e| pos.pos(self.s.index_of(&self.s.elements[e].conj(g)).unwrap())).collect();
        Perm::from_images(img).unwrap()
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn sylow(&self) -> &PermGroup {
        &self.sylow
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn small(&self) -> &SmallGroup {
        &self.s
    }

    pub fn table(&self) -> &SubgroupTable {
        &self.table
    }

    pub fn fclasses(&self) -> &[FClass] {
        &self.fclasses
    }

    pub fn is_group_backed(&self) -> bool {
        self.group_backed
    }

    /// `F`-class of the `S`-class `j`.
    pub fn fclass_of_sclass(&self, j: usize) -> usize {
        self.sclasses[j].fclass
    }

    /// Elements of `N_G(P)` inducing generators of `Aut_F(P)`, `P` the
    /// representative of `S`-class `j`.
    pub fn normalizer_generators(&self, j: usize) -> &[Perm] {
        &self.sclasses[j].normalizer_gens
    }

    /// `F`-class of a subgroup of `S`.
    pub fn fclass_of(&self, h: &Bits) -> usize {
        let (j, _) = self.table.locate(h).expect("subgroup of S");
        self.sclasses[j].fclass
    }

    /// Element `h` of `G` with `P^h` the representative of its `F`-class.
    pub fn to_rep(&self, h: &Bits) -> Perm {
        let (j, t) = self.table.locate(h).expect("subgroup of S");
        self.s.elements[self.s.inv(t)].mul(&self.sclasses[j].transport)
    }

    /// Whether two elements of `S` are `F`-conjugate.
    pub fn elements_fused(&self, x: usize, y: usize) -> bool {
        self.elem_fclass[x] == self.elem_fclass[y]
    }

    /// The `F`-class of an element.
    pub fn element_class(&self, x: usize) -> Vec<usize> {
        (0..self.s.order()).filter(|&y| self.elem_fclass[y] == self.elem_fclass[x]).collect()
    }

    /// `|C_S(x)|`.
    pub fn centralizer_order(&self, x: usize) -> usize {
        self.cent_order[x]
    }

    /// Whether `x` is fully `F`-centralized.
    pub fn element_fully_centralized(&self, x: usize) -> bool {
        let m = self.element_class(x).into_iter().map(|y| self.cent_order[y]).max().unwrap();
        self.cent_order[x] == m
    }

    /// Element `g ∈ G` with `P^g ≤ Q`, if one exists.
    pub fn f_conjugator(&self, p: &Bits, q: &Bits) -> Option<Perm> {
        if p == q {
            return Some(self.ambient.identity());
        }
        if p.len() > q.len() {
            return None;
        }
        let c = self.fclass_of(p);
        let hp = self.to_rep(p);
        for y in &self.table.subgroups {
            if y.len() == p.len() && y.is_subset(q) && self.fclass_of(y) == c {
                return Some(hp.mul(&self.to_rep(y).inv()));
            }
        }
        None
    }

    fn aut_elements(&self, c: usize) -> Result<&[Perm]> {
        let fc = &self.fclasses[c];
        if fc.aut_elements.get().is_none() {
            let mut e = fc.aut.elements()?;
            e.sort();
            let _ = fc.aut_elements.set(e);
        }
        Ok(fc.aut_elements.get().unwrap())
    }

    /// Map from positions of `h` to positions of its `F`-class representative.
    pub(crate) fn transport_positions(&self, h: &Positions) -> Perm {
        let c = self.fclass_of(&h.bits);
        let g = self.to_rep(&h.bits);
        let rp = &self.fclasses[c].positions;
        let img = h.elems.iter().map(|&e| rp.pos(self.s.index_of(&self.s.elements[e].conj(&g)).unwrap())).collect();
        Perm::from_images(img).unwrap()
    }

    /// `Aut_F(P)` as a permutation group on the positions of `P`.
    pub fn aut_f(&self, p: &Bits) -> PermGroup {
        let pos = Positions::new(p);
        let c = self.fclass_of(p);
        let sigma = self.transport_positions(&pos);
        let si = sigma.inv();
        let gens = self.fclasses[c].aut.gens().iter().map(|a| sigma.mul(a).mul(&si)).collect();
        PermGroup::from_gens(pos.len(), gens)
    }

    /// `Out_F(P)` order and a structure description.
    pub fn out_f(&self, p: &Bits) -> Result<(u128, String)> {
        let a = self.aut_f(p);
        let pos = Positions::new(p);
        let inn_gens = self.s.generating_set(p).into_iter().map(|u| self.induced(&pos, &self.s.elements[u])).collect();
        let inn = a.subgroup(inn_gens);
        let order = a.order() / inn.order();
        if order == 1 {
            return Ok((1, "1".into()));
        }
        let q = quotient_group(&a, &inn)?;
        let desc = if order <= crate::grp::small::SMALL_CAP as u128 {
            describe(&SmallGroup::from_group(&q.group)?)
        } else {
            format!("group of order {order}")
        };
        Ok((order, desc))
    }

    /// Rows of the class table.
    pub fn classify_subgroups(&self) -> Result<Vec<ClassRow>> {
        let mut rows = Vec::new();
        for (c, fc) in self.fclasses.iter().enumerate() {
            let (out_order, out_structure) = self.out_f(&fc.positions.bits)?;
            rows.push(ClassRow {
                index: c,
                order: fc.positions.len(),
                s_classes: fc.members.len(),
                subgroups: fc.members.iter().map(|&j| self.table.classes[j].size).sum(),
                rep: fc.positions.elems.clone(),
                flags: fc.flags.clone(),
                aut_f_order: fc.aut.order(),
                out_f_order: out_order,
                out_f_structure: out_structure,
            });
        }
        Ok(rows)
    }

    /// `F`-classes in `F^{fcr}` (fully normalized, centric, radical).
    pub fn fcr_classes(&self) -> Vec<usize> {
        (0..self.fclasses.len())
            .filter(|&c| {
                let f = &self.fclasses[c].flags;
                f.fully_normalized && f.centric && f.radical
            })
            .collect()
    }

    /// The conjugation family: `(rep, Aut_F(rep))` over `F^{fcr}`, with `S`
    /// always included.
    pub fn alperin_generators(&self) -> Vec<(Bits, PermGroup)> {
        let mut out: Vec<(Bits, PermGroup)> = Vec::new();
        let mut cls = self.fcr_classes();
        let top = self.fclass_of(&self.s.all());
        if !cls.contains(&top) {
            cls.push(top);
        }
        cls.sort_by_key(|&c| std::cmp::Reverse((self.fclasses[c].positions.len(), std::cmp::Reverse(c))));
        for c in cls {
            out.push((self.fclasses[c].positions.bits, self.fclasses[c].aut.clone()));
        }
        out
    }

    /// Test hook: delete one generator of `Aut_F` on an `F`-class. The
    /// system is no longer group-backed afterwards.
    pub fn mutate_delete_aut_generator(&mut self, c: usize, gen: usize) -> Result<()> {
        let fc = &mut self.fclasses[c];
        if gen >= fc.aut.gens().len() {
            return Err(FswError::Invalid("no such automizer generator".into()));
        }
        let mut gens = fc.aut.gens().to_vec();
        gens.remove(gen);
        fc.aut = PermGroup::from_gens(fc.positions.len(), gens);
        fc.aut_elements = OnceLock::new();
        self.group_backed = false;
        self.refresh_flags()
    }

    /// Subgroup of `S` as element indices.
    pub fn bits_of(&self, h: &PermGroup) -> Result<Bits> {
        let mut b = Bits::empty();
        for x in h.elements()? {
            b.insert(self.s.index_of(&x).ok_or_else(|| FswError::Precondition("not a subgroup of S".into()))?);
        }
        Ok(b)
    }

    /// A fully centralized (or normalized) `F`-conjugate of `h`, with a
    /// conjugating element.
    pub fn fully_conjugate(&self, h: &Bits, normalized: bool) -> (Bits, Perm) {
        let c = self.fclass_of(h);
        let fc = &self.fclasses[c];
        let measure = |b: &Bits| {
            if normalized {
                self.s.normalizer(b).len()
            } else {
                self.s.centralizer(b).len()
            }
        };
        let cur = measure(h);
        let best_j = *fc.members.iter().max_by_key(|&&j| (measure(&self.table.classes[j].rep), std::cmp::Reverse(j))).unwrap();
        let target = self.table.classes[best_j].rep;
        if measure(&target) == cur {
            return (*h, self.ambient.identity());
        }
        let g = self.to_rep(h).mul(&self.to_rep(&target).inv());
        (target, g)
    }

    /// `C_F(T)` or `N_F(T)`, after replacing `T` by a fully centralized
    /// (normalized) conjugate.
    pub fn local_subsystem(&self, mode: LocalMode, t: &Bits) -> Result<LocalSubsystem> {
        let normalized = mode == LocalMode::Normalizer;
        let (t2, witness) = self.fully_conjugate(t, normalized);
        let tg = self.s.perm_subgroup(&t2);
        let (amb, sb) = match mode {
            LocalMode::Centralizer => (local::centralizer(&self.ambient, &tg)?, self.s.centralizer(&t2)),
            LocalMode::Normalizer => (local::normalizer(&self.ambient, &tg)?, self.s.normalizer(&t2)),
        };
        let sg = self.s.perm_subgroup(&sb);
        let system = FusionSystem::with_sylow(&amb, &sg, self.p)?;
        Ok(LocalSubsystem { subgroup: t2, witness, system })
    }

    /// `F/T` for `T` strongly closed, realized by `G/⟨T^G⟩`.
    pub fn quotient_system(&self, t: &Bits) -> Result<QuotientSystem> {
        if !self.is_strongly_closed(t) {
            return Err(FswError::Precondition("subgroup is not strongly closed".into()));
        }
        let tgens: Vec<Perm> = self.s.generating_set(t).into_iter().map(|x| self.s.elements[x].clone()).collect();
        let n = normal_closure_of(&self.ambient, &tgens);
        let meet = self.s.all().iter().filter(|&x| n.contains(&self.s.elements[x])).count();
        let matches = meet == t.len();
        if !matches {
            return Ok(QuotientSystem { matches, system: None, projection: Vec::new() });
        }
        let q = quotient_group(&self.ambient, &n)?;
        let img: Vec<Perm> = self.sylow.gens().iter().map(|x| q.project(x)).collect::<Result<_>>()?;
        let order = (self.s.order() / t.len()) as u128;
        let sq = PermGroup::with_order(q.group.degree(), img, order);
        let system = FusionSystem::with_sylow(&q.group, &sq, self.p)?;
        let projection = self
            .s
            .elements
            .iter()
            .map(|x| {
                let y = q.project(x)?;
                system.s.index_of(&y).ok_or_else(|| FswError::Precondition("image of S outside the quotient Sylow".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(QuotientSystem { matches, system: Some(system), projection })
    }

    pub fn is_strongly_closed(&self, t: &Bits) -> bool {
        t.iter().all(|x| (0..self.s.order()).all(|y| !self.elements_fused(x, y) || t.contains(y)))
    }

    /// Normal subgroups of `S`.
    pub fn normal_subgroups_of_s(&self) -> Vec<Bits> {
        self.table.classes.iter().filter(|c| c.size == 1).map(|c| c.rep).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalMode {
    Centralizer,
    Normalizer,
}

pub struct LocalSubsystem {
    /// The fully centralized (normalized) conjugate actually used.
    pub subgroup: Bits,
    /// `g` with `T^g` equal to `subgroup`.
    pub witness: Perm,
    pub system: FusionSystem,
}

pub struct QuotientSystem {
    /// Whether `S ∩ ⟨T^G⟩ = T`, so the group quotient realizes `F/T`.
    pub matches: bool,
    pub system: Option<FusionSystem>,
    /// Image in the quotient Sylow of each element of `S`.
    pub projection: Vec<usize>,
}

/// `F_{S₁×S₂}(G₁×G₂)`.
pub fn product_system(a: &FusionSystem, b: &FusionSystem) -> Result<FusionSystem> {
    if a.p != b.p {
        return Err(FswError::Invalid("systems over different primes".into()));
    }
    let g = crate::ptheory::direct_product(&a.ambient, &b.ambient);
    let s = crate::ptheory::direct_product(&a.sylow, &b.sylow);
    FusionSystem::with_sylow(&g, &s, a.p)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub index: usize,
    pub order: usize,
    pub s_classes: usize,
    pub subgroups: usize,
    pub rep: Vec<usize>,
    pub flags: Flags,
    pub aut_f_order: u128,
    pub out_f_order: u128,
    pub out_f_structure: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::atlas_lookup;

    #[test]
    fn psl27_basics() {
        let g = atlas_lookup("PSL2_7").unwrap();
        let f = FusionSystem::build(&g, 2).unwrap();
        assert_eq!(f.small().order(), 8);
        // one class of involutions
        let inv: Vec<usize> = f.small().involutions(&f.small().all());
        assert!(inv.iter().all(|&x| f.elements_fused(x, inv[0])));
        let v4: Vec<&FClass> = f.fclasses().iter().filter(|c| c.positions.len() == 4 && c.aut().order() == 6).collect();
        assert_eq!(v4.len(), 2);
    }

    #[test]
    fn trivial_sylow() {
        let c3 = crate::ptheory::cyclic(3);
        let f = FusionSystem::build(&c3, 2).unwrap();
        assert_eq!(f.small().order(), 1);
        assert_eq!(f.fclasses().len(), 1);
    }
}
