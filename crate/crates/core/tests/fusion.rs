use fsw_core::atlas::atlas_lookup;
use fsw_core::fusion::*;
use fsw_core::grp::local::{centralizer, centralizer_element, normalizer, subgroup_conjugator};
use fsw_core::grp::normal::derived_subgroup;
use fsw_core::grp::small::Bits;
use fsw_core::ptheory::{cyclic, dihedral, direct_product, identify_small, same_2group_type, wreath_c2};

fn system(name: &str) -> FusionSystem {
    FusionSystem::build(&atlas_lookup(name).unwrap(), 2).unwrap()
}

fn order_of_class(f: &FusionSystem, c: usize) -> usize {
    f.fclasses()[c].positions.len()
}

/// Subgroups of `S` of the given order that are cyclic and normal.
fn cyclic_normal_of_order(f: &FusionSystem, n: usize) -> Bits {
    let s = f.small();
    *f.normal_subgroups_of_s()
        .iter()
        .find(|b| b.len() == n && b.iter().any(|x| s.elt_order(x) as usize == n))
        .expect("cyclic normal subgroup")
}

const CORPUS: &[&str] = &["S4", "PSL2_7", "A6", "SL2_7", "PGL2_9", "PSL3_3"];

#[test]
fn four_groups_of_psl27_stay_apart() {
    let f = system("PSL2_7");
    let v4: Vec<usize> = (0..f.fclasses().len()).filter(|&c| order_of_class(&f, c) == 4 && f.fclasses()[c].aut().order() == 6).collect();
    assert_eq!(v4.len(), 2);
    let p = f.fclasses()[v4[0]].positions.bits;
    let q = f.fclasses()[v4[1]].positions.bits;
    assert!(f.f_conjugator(&p, &q).is_none());
    // brute force in G
    let g = f.ambient();
    let pg = f.small().perm_subgroup(&p);
    let qg = f.small().perm_subgroup(&q);
    assert!(subgroup_conjugator(g, &pg, &qg).unwrap().is_none());
    let gens: Vec<usize> = f.alperin_generators().iter().map(|(b, _)| b.len()).collect();
    assert_eq!(gens, vec![8, 4, 4]);
}

#[test]
fn involutions_of_psl27_fuse_with_witness() {
    let f = system("PSL2_7");
    let s = f.small();
    let z = s.center(&s.all()).iter().find(|&x| x != 0).unwrap();
    let t = s.involutions(&s.all()).into_iter().find(|&x| x != z).unwrap();
    let (zb, tb) = (s.closure(&[z]), s.closure(&[t]));
    let g = f.f_conjugator(&zb, &tb).expect("single involution class");
    assert_eq!(s.elements[z].conj(&g), s.elements[t]);
    assert_eq!(f.f_conjugator(&zb, &zb).map(|g| g.is_identity()), Some(true));
}

#[test]
fn automizer_orders_match_normalizer_over_centralizer() {
    for name in ["S4", "PSL2_7", "A6"] {
        let f = system(name);
        let g = f.ambient();
        for fc in f.fclasses() {
            let p = f.small().perm_subgroup(&fc.positions.bits);
            let n = normalizer(g, &p).unwrap().order();
            let c = centralizer(g, &p).unwrap().order();
            assert_eq!(fc.aut().order(), n / c, "{name}");
        }
    }
}

#[test]
fn quaternion_subgroups_of_sl27_have_automizer_s4() {
    let f = system("SL2_7");
    assert_eq!(f.small().order(), 16);
    let q8: Vec<&FClass> = f
        .fclasses()
        .iter()
        .filter(|c| {
            let b = &c.positions.bits;
            b.len() == 8 && f.small().involutions(b).len() == 1 && b.iter().all(|x| f.small().elt_order(x) < 8)
        })
        .collect();
    assert!(!q8.is_empty());
    for c in &q8 {
        // Q8 has trivial-centre Aut of order 24 only as S4
        assert_eq!(c.aut().order(), 24);
        assert!(!c.aut().is_abelian());
        let (out, _) = f.out_f(&c.positions.bits).unwrap();
        assert_eq!(out, 6);
    }
}

#[test]
fn corpus_systems_are_saturated() {
    for name in CORPUS {
        let f = system(name);
        let r = saturation_check(&f).unwrap();
        assert!(r.saturated, "{name}: {:?}", r.violations);
        assert!(r.morphisms_checked > 0);
    }
}

#[test]
fn two_group_over_itself() {
    let s = wreath_c2(&dihedral(3).unwrap());
    let f = FusionSystem::build(&s, 2).unwrap();
    assert_eq!(f.small().order(), 128);
    assert!(saturation_check(&f).unwrap().saturated);
    let gens = f.alperin_generators();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].0.len(), 128);
    assert_eq!(normal_core_op(&f).len(), 128);
    let cl = focal_hyperfocal(&f).unwrap();
    assert_eq!(cl.foc_bits, f.small().derived(&f.small().all()));
}

#[test]
fn deleting_an_automizer_generator_breaks_saturation() {
    let base = system("PSL2_7");
    let targets: Vec<usize> = base.fcr_classes().into_iter().filter(|&c| order_of_class(&base, c) == 4).collect();
    assert_eq!(targets.len(), 2);
    let mut sylow_failures = 0;
    for &c in &targets {
        for k in 0..base.fclasses()[c].aut().gens().len() {
            let mut f = system("PSL2_7");
            f.mutate_delete_aut_generator(c, k).unwrap();
            assert!(!f.is_group_backed());
            let r = saturation_check(&f).unwrap();
            if f.fclasses()[c].aut().order() % 2 == 1 {
                assert!(!r.saturated);
                assert!(r.violations.iter().any(|v| v.axiom == Axiom::Sylow));
                sylow_failures += 1;
            }
        }
    }
    assert!(sylow_failures > 0);
}

#[test]
fn focal_subgroup_matches_derived_intersection() {
    for name in CORPUS {
        let f = system(name);
        let cl = focal_hyperfocal(&f).unwrap();
        assert_eq!(cl.foc_bits, sylow_cap_derived(&f), "{name}");
        assert!(cl.hyp_bits.is_subset(&cl.foc_bits));
        assert!(f.is_strongly_closed(&cl.foc_bits));
        assert!(f.is_strongly_closed(&cl.hyp_bits));
        let s = f.small();
        let (q, _) = s.quotient(&s.all(), &cl.foc_bits);
        if (0..q.order()).any(|x| q.elt_order(x) as usize == q.order()) {
            assert_eq!(cl.foc_bits, cl.hyp_bits, "{name}");
        }
    }
    let f = system("S4");
    let cl = focal_hyperfocal(&f).unwrap();
    assert_eq!(cl.foc_order, 4);
    assert!(!cl.is_perfect);
    assert!(focal_hyperfocal(&system("PSL2_7")).unwrap().is_perfect);
}

#[test]
fn largest_normal_subgroup_of_the_system() {
    assert_eq!(normal_core_op(&system("PSL2_7")).len(), 1);
    let f = system("S4");
    let o = normal_core_op(&f);
    assert_eq!(o.len(), 4);
    assert!(f.small().is_elementary_abelian(&o));
    for (r, a) in f.alperin_generators() {
        let pos = Positions::new(&r);
        for alpha in a.gens() {
            assert!(o.iter().all(|x| o.contains(pos.elems[alpha.image(pos.pos(x))])));
        }
    }
}

#[test]
fn centralizer_of_double_transposition_in_a10() {
    let f = system("A10");
    assert_eq!(f.small().order(), 128);
    let s = f.small();
    // a double transposition lying in S
    let i = (0..s.order())
        .find(|&i| s.elt_order(i) == 2 && (0..10).filter(|&k| s.elements[i].image(k) != k).count() == 4)
        .unwrap();
    let x = s.elements[i].clone();
    let xb = s.closure(&[i]);
    let loc = f.local_subsystem(LocalMode::Centralizer, &xb).unwrap();
    assert_eq!(loc.system.small().order(), 64);
    let c = centralizer_element(f.ambient(), &x).unwrap();
    assert_eq!(loc.system.ambient().order(), c.order());
    assert_eq!(fsw_core::group::p_part(c.order(), 2), 64);
}

#[test]
fn trivial_local_subsystems() {
    let f = system("PSL2_7");
    let one = f.small().trivial();
    let c = f.local_subsystem(LocalMode::Centralizer, &one).unwrap();
    assert_eq!(c.system.fclasses().len(), f.fclasses().len());
    let all = f.small().all();
    let n = f.local_subsystem(LocalMode::Normalizer, &all).unwrap();
    assert_eq!(n.system.small().order(), 8);
    assert_eq!(n.system.ambient().order(), 8);
}

#[test]
fn quotients_of_two_group_systems() {
    let d8 = dihedral(3).unwrap();
    let f = FusionSystem::build(&d8, 2).unwrap();
    let d = f.small().derived(&f.small().all());
    let q = f.quotient_system(&d).unwrap();
    assert!(q.matches);
    assert_eq!(identify_small(q.system.unwrap().small()).unwrap().to_string(), "C2^2");
    let top = f.quotient_system(&f.small().all()).unwrap();
    assert_eq!(top.system.unwrap().small().order(), 1);
    let s = f.small();
    let z = s.center(&s.all());
    let t = s.involutions(&s.all()).into_iter().find(|&x| !z.contains(x)).unwrap();
    assert!(f.quotient_system(&s.closure(&[t])).is_err());
}

#[test]
fn nested_quotients_agree() {
    let s = wreath_c2(&dihedral(3).unwrap());
    let f = FusionSystem::build(&s, 2).unwrap();
    let normals = f.normal_subgroups_of_s();
    let mut pairs = 0;
    for t1 in normals.iter().filter(|b| b.len() == 2 || b.len() == 4) {
        for t2 in normals.iter().filter(|b| b.len() == 4 * t1.len() && t1.is_subset(b)) {
            let q1 = f.quotient_system(t1).unwrap();
            let f1 = q1.system.as_ref().unwrap();
            let mut t2bar = Bits::empty();
            for x in t2.iter() {
                t2bar.insert(q1.projection[x]);
            }
            let twice = f1.quotient_system(&t2bar).unwrap().system.unwrap();
            let once = f.quotient_system(t2).unwrap().system.unwrap();
            assert!(same_2group_type(once.sylow(), twice.sylow()).unwrap());
            assert_eq!(once.fclasses().len(), twice.fclasses().len());
            pairs += 1;
            if pairs == 6 {
                return;
            }
        }
    }
    assert!(pairs > 0);
}

#[test]
fn normal_subsystem_centralizers() {
    let a6 = atlas_lookup("A6").unwrap();
    let g = direct_product(&a6, &cyclic(2));
    let f = FusionSystem::build(&g, 2).unwrap();
    let n = g.subgroup(g.gens().iter().filter(|x| x.image(6) == 6 && x.image(7) == 7).cloned().collect());
    assert_eq!(n.order(), 360);
    let r = centralizer_of_normal_subsystem(&f, &n).unwrap();
    assert_eq!(r.order, 2);
    let y = r.bits.iter().find(|&x| x != 0).unwrap();
    assert_eq!(f.small().elements[y].image(0), 0);

    let f = system("PSL2_7");
    let r = centralizer_of_normal_subsystem(&f, f.ambient()).unwrap();
    let s = f.small();
    assert!(r.bits.is_subset(&s.centralizer(&s.all())));
}

#[test]
fn transfer_into_cyclic_maximal_subgroups() {
    let f = system("PSL2_7");
    let t = cyclic_normal_of_order(&f, 4);
    let r = transfer_check(&f, &t, TransferMode::Cyclic).unwrap();
    assert!(r.conclusion);
    assert_eq!(r.index, 2);

    let f = system("SL2_7");
    let t = cyclic_normal_of_order(&f, 8);
    let r = transfer_check(&f, &t, TransferMode::Cyclic).unwrap();
    assert!(r.conclusion);
    assert!(r.witnesses.iter().all(|(u, _)| f.small().elt_order(*u) == 4));

    let f = system("S4");
    let t = cyclic_normal_of_order(&f, 4);
    assert!(transfer_check(&f, &t, TransferMode::Cyclic).is_err());
}

#[test]
fn product_systems() {
    let a = system("PSL2_7");
    let c2 = FusionSystem::build(&cyclic(2), 2).unwrap();
    let p = product_system(&a, &c2).unwrap();
    let cl = focal_hyperfocal(&p).unwrap();
    assert_eq!(cl.foc_order, 8);
    assert_eq!(cl.foc_bits, sylow_cap_derived(&p));

    let pp = product_system(&a, &a).unwrap();
    assert_eq!(focal_hyperfocal(&pp).unwrap().foc_order, 64);
    let d = derived_subgroup(pp.ambient());
    assert_eq!(pp.ambient().order(), d.order());
}

#[test]
fn burnside_for_thompson_subgroup_and_sylow() {
    for name in CORPUS {
        let f = system(name);
        let all = f.small().all();
        assert!(burnside_check(&f, None).unwrap().holds, "{name}");
        let r = burnside_check(&f, Some(&all)).unwrap();
        assert!(r.weakly_closed && r.holds, "{name}");
    }
}

#[test]
fn conjugators_compose() {
    let f = system("A6");
    let t = f.table();
    for fc in f.fclasses() {
        let m = fc.members.clone();
        if m.len() < 2 {
            continue;
        }
        let (a, b) = (t.classes[m[0]].rep, t.classes[m[1]].rep);
        let c = t.classes[*m.last().unwrap()].rep;
        let g = f.f_conjugator(&a, &b).unwrap();
        let h = f.f_conjugator(&b, &c).unwrap();
        let s = f.small();
        let image: Bits = {
            let mut out = Bits::empty();
            for x in a.iter() {
                out.insert(s.index_of(&s.elements[x].conj(&g.mul(&h))).unwrap());
            }
            out
        };
        assert_eq!(image, c);
        let back = f.f_conjugator(&b, &a).unwrap();
        let mut img = Bits::empty();
        for x in b.iter() {
            img.insert(s.index_of(&s.elements[x].conj(&back)).unwrap());
        }
        assert_eq!(img, a);
    }
}

#[test]
fn central_involution_of_a6_is_not_weakly_closed() {
    let f = system("A6");
    let s = f.small();
    let z = s.center(&s.all());
    assert_eq!(z.len(), 2);
    let fl = &f.fclasses()[f.fclass_of(&z)].flags;
    assert!(!fl.weakly_closed && !fl.strongly_closed);
    // brute force: some G-conjugate of z other than z lies in S
    let zg = s.elements[z.iter().find(|&x| x != 0).unwrap()].clone();
    let g = f.ambient();
    let hit = g.elements().unwrap().iter().any(|h| {
        let y = zg.conj(h);
        y != zg && f.sylow().contains(&y)
    });
    assert!(hit);
}

#[test]
fn odd_automorphism_criterion() {
    assert!(aut_s_is_p_group(&system("PSL2_7")).unwrap());
    // Aut(D8) ≅ D8
    assert!(aut_s_is_p_group(&system("A6")).unwrap());
    let v4 = FusionSystem::build(&fsw_core::ptheory::elementary(2), 2).unwrap();
    assert!(!aut_s_is_p_group(&v4).unwrap());
}
