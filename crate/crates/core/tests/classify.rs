use fsw_core::atlas::{atlas_lookup, projective_line_group, Field, LineFamily};
use fsw_core::classify::*;
use fsw_core::fusion::FusionSystem;
use fsw_core::grp::local::centralizer_element;
use fsw_core::grp::normal::derived_subgroup;
use fsw_core::ptheory::{automorphisms, dihedral, Family, Variant};

fn system(name: &str) -> FusionSystem {
    FusionSystem::build(&atlas_lookup(name).unwrap(), 2).unwrap()
}

fn item<'a>(items: &'a [ItemCheck], name: &str) -> &'a ItemCheck {
    items.iter().find(|i| i.item == name).unwrap()
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| num_gcd(*k, n) == 1).count() as u64
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn dihedral_outer_automorphisms() {
    let items = automorphism_lemma_check().unwrap();
    assert!(items.iter().all(|i| i.holds), "{items:?}");
    // |Aut(D_2m)| = m phi(m), |Inn| = m for m >= 4 a power of two
    for n in 3..=5u32 {
        let m = 1u64 << (n - 1);
        let a = automorphisms(&dihedral(n).unwrap()).unwrap();
        assert_eq!(a.order, (m * phi(m)) as u128);
        assert_eq!(a.out_order(), (phi(m)) as u128);
    }
}

#[test]
fn maximal_class_profiles() {
    for (name, q, case) in [
        ("PSL2_7", 7, MaxClassCase::Dihedral),
        ("PSL2_17", 17, MaxClassCase::Dihedral),
        ("PSL3_3", 3, MaxClassCase::Semidihedral),
        ("SL2_7", 7, MaxClassCase::Quaternion),
    ] {
        let r = maxclass_fusion_check(&system(name), Some(q)).unwrap();
        assert_eq!(r.case, case, "{name}");
        assert!(r.holds, "{name}: {r:?}");
    }
    // wrong field size breaks only the parameter relation
    let r = maxclass_fusion_check(&system("PSL2_17"), Some(7)).unwrap();
    assert!(r.profile_holds && !r.holds);
}

#[test]
fn maximal_class_rejects_other_sylows() {
    assert!(maxclass_fusion_check(&system("A10"), None).is_err());
    assert!(maxclass_fusion_check(&system("PGL2_9"), None).is_err());
}

#[test]
fn omnibus_at_nine() {
    let r = l2q_omnibus_check(9).unwrap();
    assert_eq!(r.k, 3);
    assert!(r.holds, "{r:?}");
    assert_eq!(r.items.len(), 8);
    // C_K(f) for the involutory field automorphism: PGL2(3) = S4
    let f = Field::new(9).unwrap();
    let k = projective_line_group(LineFamily::Psl2, &f).unwrap();
    let phi = fsw_core::atlas::line_frobenius(&f);
    assert_eq!(centralizer_element(&k, &phi).unwrap().order(), 24);
    assert!(item(&r.items, "g").detail.contains("|C_K(f)| = 24"));
}

#[test]
fn omnibus_other_fields() {
    for q in [5, 7, 11, 25, 27] {
        let r = l2q_omnibus_check(q).unwrap();
        assert!(r.holds, "q = {q}: {r:?}");
        // nu2(q^2-1) = k+1
        let mut n = q * q - 1;
        let mut v = 0;
        while n % 2 == 0 {
            n /= 2;
            v += 1;
        }
        assert_eq!(r.k + 1, v);
    }
}

#[test]
fn presentation_items_h_squared_one() {
    let r = presentation_lemma_check(3, Variant::HSquared1).unwrap();
    assert_eq!(r.order, 256);
    assert_eq!(r.isotype, "Q16 wr* C2");
    assert!(r.holds, "{r:?}");
    assert_eq!(r.q_h.family, Family::Dihedral);
    assert_eq!(r.q_h.order, 8);
    let d = item(&r.items, "d");
    assert!(d.holds && d.detail.contains("|C_S(h)| = 16"));
}

#[test]
fn presentation_items_h_squared_q() {
    let r = presentation_lemma_check(3, Variant::HSquaredQ).unwrap();
    assert_eq!(r.order, 256);
    assert_eq!(r.isotype, "SD16 wr* C2");
    assert!(r.holds, "{r:?}");
    assert_eq!(r.q_h.family, Family::Cyclic);
    assert!(item(&r.items, "c").detail.starts_with("0 involutions"));
    assert!(item(&r.items, "h").detail.contains("|C_S(ff^a)| = 32"));
}

#[test]
fn printed_forms_that_do_not_hold() {
    let r = presentation_lemma_check(3, Variant::HSquared1).unwrap();
    // a class of size |S : C_S(ff^a)| = 256/32 = 8 cannot cover the 16 elements of J0ff^a
    let h = item(&r.as_printed, "h");
    assert!(!h.holds);
    assert_eq!(h.detail, "2 S-classes meet J0ff^a");
    let i = item(&r.as_printed, "i");
    assert!(!i.holds);
    assert!(i.detail.ends_with("D16"));
    let r = presentation_lemma_check(3, Variant::HSquaredQ).unwrap();
    assert_eq!(r.as_printed.len(), 1);
    assert!(!r.as_printed[0].holds);
}

#[test]
fn a10_has_four_group_q() {
    let f = system("A10");
    let r = hmain_check(&f).unwrap();
    assert_eq!(r.s_isotype.to_string(), "D8 wr C2");
    assert_eq!(r.failed_hypothesis.as_deref(), Some("Q_cyclic"));
    let v = &r.verdicts;
    assert!(v.F_perfect && v.O2_trivial && v.Baum_in_T && v.K_dihedral && !v.Q_cyclic);
    let x = f.small().elements[r.x.unwrap()].clone();
    assert_eq!(x.support().len(), 4);
    let c = r.component.as_ref().unwrap();
    assert_eq!(c.centralizer_order, 2880);
    assert_eq!(c.components.len(), 1);
    assert_eq!(c.components[0].order, 360);
    assert_eq!(c.k, 3);
    // K = A6 on the other six points, so C_T(K) moves only supp(x)
    assert_eq!(c.q.len(), 4);
    assert!(c.q_agrees);
    let supp = x.support();
    for &e in &c.q {
        assert!(f.small().elements[e].support().iter().all(|p| supp.contains(p)));
    }
    assert_eq!(c.q_label.as_ref().unwrap().to_string(), "C2^2");
    let concl = conclusion_check(&f, &r).unwrap();
    assert!(!concl.applicable);
    assert_eq!(concl.verdict, "not applicable");
}

#[test]
fn psl43_satisfies_everything() {
    let f = system("PSL4_3");
    let r = hmain_check(&f).unwrap();
    assert!(r.verdicts.all(), "{:?}", r.verdicts);
    assert!(r.failed_hypothesis.is_none());
    let c = r.component.as_ref().unwrap();
    assert_eq!(c.k, 3);
    assert_eq!(c.centralizer_order, 2880);
    assert_eq!(c.components[0].quotient_order, 360);
    assert!(c.components[0].quotient_simple);
    let q = c.q_label.as_ref().unwrap();
    assert_eq!((q.family, q.order), (Family::Cyclic, 4));
    assert!(c.q_agrees);
    assert_eq!(r.two_rank, 4);
    assert_eq!(r.rank_dichotomy, Some(true));
    let concl = conclusion_check(&f, &r).unwrap();
    assert!(concl.wreath_match);
    assert_eq!((concl.k, concl.q1, concl.nu2_q1_plus_1), (3, Some(3), Some(2)));
    assert_eq!(concl.reference_match, Some(true));
    assert_eq!(concl.verdict, "holds");
}

#[test]
fn psl27_has_no_component() {
    let r = hmain_check(&system("PSL2_7")).unwrap();
    assert_eq!(r.candidates.len(), 1);
    assert_eq!(r.candidates[0].centralizer_in_g, 8);
    assert!(r.component.as_ref().unwrap().components.is_empty());
    assert_eq!(r.failed_hypothesis.as_deref(), Some("K_dihedral"));
    assert!(r.rank_dichotomy.is_none());
}

#[test]
fn perfection_verdict_matches_commutator_oracle() {
    for name in ["S4", "PSL2_7", "A6", "SL2_7", "PGL2_9", "PSL3_3", "A10"] {
        let f = system(name);
        let r = hmain_check(&f).unwrap();
        // S inside [G,G], by direct membership
        let d = derived_subgroup(f.ambient());
        let inside = f.sylow().gens().iter().all(|g| d.contains(g));
        assert_eq!(r.verdicts.F_perfect, inside, "{name}");
        assert_eq!(r.perfect_oracle, inside, "{name}");
    }
}

#[test]
fn smallest_field_parameter() {
    assert_eq!(smallest_q1(3), Some(3));
    assert_eq!(smallest_q1(4), Some(7));
    assert_eq!(smallest_q1(5), Some(47));
    assert_eq!(smallest_q1(2), None);
}

#[test]
fn near_miss_table() {
    let rows = near_miss_suite().unwrap();
    let scen: Vec<Scenario> = rows.iter().map(|r| r.scenario).collect();
    assert_eq!(scen, Scenario::ALL);
    assert!(rows.iter().all(|r| r.passed), "{rows:?}");
    let failed: Vec<Option<&str>> = rows.iter().map(|r| r.failed_hypothesis.as_deref()).collect();
    assert_eq!(failed, [Some("Q not cyclic"), Some("F not perfect"), Some("Q not cyclic"), None]);
    let contra: Vec<&str> = rows.iter().map(|r| r.contradiction.as_str()).collect();
    assert_eq!(contra, ["C_T(K) = D8", "O^2(F) < F", "C_T(K) = C2^2", ""]);
    // PSL4(3) has index 2 in PGL4(3)
    let pgl = rows[1].checks.iter().find(|c| c.item == "PGL4(3)").unwrap();
    assert_eq!(pgl.detail, "|S| = 256, |foc| = 128, |hyp| = 128");
    let text = render_table(&rows);
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("Scenario"));
    let js = serde_json::to_value(&rows).unwrap();
    assert_eq!(js.as_array().unwrap().len(), 4);
    assert_eq!(js[2]["scenario"], "no_h_a10");
}
