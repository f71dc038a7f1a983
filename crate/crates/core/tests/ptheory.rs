use fsw_core::grp::present::{coset_enumerate, COSET_TABLE_CAP};
use fsw_core::grp::small::{SmallGroup, SubgroupTable};
use fsw_core::ptheory::*;
use fsw_core::PermGroup;

fn small(g: &PermGroup) -> SmallGroup {
    SmallGroup::from_group(g).unwrap()
}

#[test]
fn lemma_groups_have_order_256_and_expected_isotypes() {
    let q = lemma_presentation(3, Variant::HSquared1).unwrap();
    let g = coset_enumerate(&q, COSET_TABLE_CAP).unwrap().group(true);
    assert_eq!(g.order(), 256);
    assert_eq!(identify_isotype(&g).unwrap().to_string(), "Q16 wr* C2");
    let q = lemma_presentation(3, Variant::HSquaredQ).unwrap();
    let g2 = coset_enumerate(&q, COSET_TABLE_CAP).unwrap().group(true);
    assert_eq!(g2.order(), 256);
    assert_eq!(identify_isotype(&g2).unwrap().to_string(), "SD16 wr* C2");
    assert!(!same_2group_type(&g, &g2).unwrap());
}

#[test]
fn printed_relators_alone_define_a_larger_group() {
    let mut q = lemma_presentation(3, Variant::HSquared1).unwrap();
    q.relators.truncate(PRINTED_RELATORS);
    assert_eq!(coset_enumerate(&q, COSET_TABLE_CAP).unwrap().index, 1024);
}

#[test]
fn wreath_isotypes() {
    for k in [3, 4] {
        let w = combine(CombineMode::WreathC2, &dihedral(k).unwrap()).unwrap();
        let l = identify_isotype(&w).unwrap();
        assert_eq!((l.family, l.param), (Family::DWrC2, k));
    }
}

#[test]
fn identify_named_families() {
    assert_eq!(identify_isotype(&cyclic(2)).unwrap().family, Family::Cyclic);
    assert_eq!(identify_isotype(&dihedral(4).unwrap()).unwrap().to_string(), "D16");
    assert_eq!(identify_isotype(&semidihedral(5).unwrap()).unwrap().to_string(), "SD32");
    assert_eq!(identify_isotype(&quaternion(4).unwrap()).unwrap().to_string(), "Q16");
}

#[test]
fn semidihedral_maximal_subgroups() {
    let s = small(&semidihedral(4).unwrap());
    let t = SubgroupTable::build(&s, 2).unwrap();
    let mut kinds = Vec::new();
    for c in t.classes.iter().filter(|c| c.order == 8) {
        let h = c.rep;
        let l = identify_isotype(&s.perm_subgroup(&h)).unwrap();
        kinds.push(l.to_string());
    }
    kinds.sort();
    assert_eq!(kinds, vec!["C8", "D8", "Q8"]);
}

#[test]
fn dihedral_16_has_two_classes_of_four_noncentral_involutions() {
    let s = small(&dihedral(4).unwrap());
    let all = s.all();
    let z = s.center(&all);
    let mut sizes: Vec<usize> = s
        .element_classes(&all)
        .into_iter()
        .filter(|c| s.elt_order(c[0]) == 2 && !z.contains(c[0]))
        .map(|c| c.len())
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![4, 4]);
}

#[test]
fn omega_and_agemo_examples() {
    assert_eq!(omega_agemo(&quaternion(3).unwrap(), true, 1).unwrap().order(), 2);
    let a = omega_agemo(&dihedral(4).unwrap(), false, 1).unwrap();
    assert_eq!(identify_isotype(&a).unwrap().to_string(), "C4");
    assert_eq!(omega_agemo(&elementary(3), true, 1).unwrap().order(), 8);
}

#[test]
fn thompson_subgroup_of_d8_wr_c2() {
    let w = small(&combine(CombineMode::WreathC2, &dihedral(3).unwrap()).unwrap());
    let t = thompson_data(&w, &w.all());
    assert_eq!(t.two_rank, 4);
    // J and Baum are invariant under every automorphism
    let aut = fsw_core::grp::iso::automorphism_group(&w).unwrap();
    for a in aut.group.gens() {
        let img = |b: &fsw_core::grp::small::Bits| {
            let mut o = fsw_core::grp::small::Bits::empty();
            for x in b.iter() {
                o.insert(a.image(x));
            }
            o
        };
        assert_eq!(img(&t.j), t.j);
        assert_eq!(img(&t.baum), t.baum);
    }
    assert!(t.j.is_subset(&t.baum));
}

#[test]
fn automorphism_examples() {
    let d16 = automorphisms(&dihedral(4).unwrap()).unwrap();
    assert_eq!(d16.out_order(), 4);
    let o = d16.out_group().unwrap();
    assert!(o.all().iter().all(|x| o.elt_order(x) <= 2));
    for (k, out) in [(2, 2), (3, 4), (4, 8)] {
        assert_eq!(automorphisms(&dihedral(k + 1).unwrap()).unwrap().out_order(), out);
    }
    let w = automorphisms(&combine(CombineMode::WreathC2, &dihedral(3).unwrap()).unwrap()).unwrap();
    assert!(w.order.is_power_of_two());
    assert_eq!(automorphisms(&cyclic(2)).unwrap().order, 1);
}
