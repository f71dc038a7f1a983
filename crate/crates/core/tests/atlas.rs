use fsw_core::atlas::*;
use fsw_core::grp::local::{center, involution_classes};
use fsw_core::grp::normal::is_perfect;
use fsw_core::grp::sylow::sylow;
use fsw_core::ptheory::{identify_isotype, same_2group_type};

#[test]
fn atlas_orders_match_formulas() {
    let expected: &[(&str, u128, usize)] = &[
        ("PSL4_3", 6_065_280, 40),
        ("PGL4_3", 12_130_560, 40),
        ("A10", 1_814_400, 10),
        ("A6", 360, 6),
        ("S4", 24, 4),
        ("PSL2_7", 168, 8),
        ("PSL2_9", 360, 10),
        ("PSL2_17", 2448, 18),
        ("SL2_7", 336, 48),
        ("SL2_9", 720, 80),
        ("PGL2_9", 720, 10),
        ("PGammaL2_9", 1440, 10),
        ("PSL3_3", 5616, 13),
    ];
    for &(name, order, degree) in expected {
        let g = atlas_lookup(name).unwrap();
        assert_eq!((g.order(), g.degree()), (order, degree), "{name}");
    }
    assert!(atlas_lookup("PSL9_9").is_err());
    assert!(atlas_lookup("nonsense").is_err());
}

#[test]
fn sylow_types_of_line_groups() {
    let cases = [("PGL2_9", "D16"), ("SL2_7", "Q16"), ("PSL2_17", "D16"), ("PSL3_3", "SD16"), ("PSL2_7", "D8")];
    for (name, label) in cases {
        let g = atlas_lookup(name).unwrap();
        let s = sylow(&g, 2, 1).unwrap();
        assert_eq!(identify_isotype(&s).unwrap().to_string(), label, "{name}");
    }
}

#[test]
fn psl2_has_one_class_of_involutions() {
    for name in ["PSL2_7", "PSL2_9", "PSL2_17"] {
        let g = atlas_lookup(name).unwrap();
        let s = sylow(&g, 2, 3).unwrap();
        assert_eq!(involution_classes(&g, &s).unwrap().len(), 1, "{name}");
    }
}

#[test]
fn psl2_9_is_simple_of_order_360() {
    let g = atlas_lookup("PSL2_9").unwrap();
    assert!(is_perfect(&g));
    // every nontrivial class generates the whole group
    for (x, _) in fsw_core::grp::local::class_representatives(&g).unwrap() {
        if !x.is_identity() {
            assert_eq!(fsw_core::grp::normal::normal_closure_of(&g, &[x]).order(), 360);
        }
    }
    let a6 = atlas_lookup("A6").unwrap();
    assert_eq!(a6.order(), g.order());
    let sa = sylow(&a6, 2, 1).unwrap();
    let sb = sylow(&g, 2, 1).unwrap();
    assert!(same_2group_type(&sa, &sb).unwrap());
}

#[test]
fn frobenius_centralizes_a_sylow_of_psl2_9() {
    let f = Field::new(9).unwrap();
    let fr = line_frobenius(&f);
    let psl = atlas_lookup("PSL2_9").unwrap();
    let c = fsw_core::grp::local::centralizer_element(&psl, &fr).unwrap();
    let s = sylow(&c, 2, 1).unwrap();
    // |PSL2(3)·2| contains a Sylow 2-subgroup of order 8 = |P|
    assert_eq!(s.order(), 8);
    assert!(s.gens().iter().all(|x| x.mul(&fr) == fr.mul(x)));
}

#[test]
fn sl2_9_has_centre_of_order_two() {
    let g = atlas_lookup("SL2_9").unwrap();
    assert_eq!(center(&g).unwrap().order(), 2);
}

#[test]
fn alternating_small_cases() {
    assert_eq!(alternating(3).unwrap().order(), 3);
    assert_eq!(alternating(10).unwrap().degree(), 10);
}
