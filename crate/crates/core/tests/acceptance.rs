//! Desk acceptance criteria. Each test prints one PASS/FAIL line.

use fsw_core::atlas::atlas_lookup;
use fsw_core::cli::verify::{run_criterion, CriterionResult};
use fsw_core::classify::{hmain_check, presentation_lemma_check};
use fsw_core::fusion::FusionSystem;
use fsw_core::grp::local::centralizer_element;
use fsw_core::ptheory::{automorphisms, dihedral, Variant};

fn report(r: &CriterionResult) {
    println!(
        "criterion {} ({}): {} [{:.2}s] {}",
        r.id,
        r.name,
        if r.passed { "PASS" } else { "FAIL" },
        r.seconds,
        r.detail
    );
}

fn check(id: u32) {
    let r = run_criterion(id);
    report(&r);
    assert!(r.passed, "criterion {id}: {}", r.detail);
}

#[test]
fn criterion_1_automorphism_lemmas() {
    check(1);
    // |Out(D_{2^{k+1}})| = phi(2^k) = 2^{k-1}
    for k in 2..=4u32 {
        assert_eq!(automorphisms(&dihedral(k + 1).unwrap()).unwrap().out_order(), 1 << (k - 1));
    }
}

#[test]
fn criterion_2_maximal_class_fusion() {
    check(2);
}

#[test]
fn criterion_3_l2_9_omnibus() {
    check(3);
    // |PGammaL2(9)| = 2 * 2 * 360
    assert_eq!(atlas_lookup("PGammaL2_9").unwrap().order(), 1440);
}

#[test]
fn criterion_4_a10_near_miss() {
    check(4);
    // double transpositions form one class of size C(10,4) * 3 = 630
    let g = atlas_lookup("A10").unwrap();
    let f = FusionSystem::build(&g, 2).unwrap();
    let r = hmain_check(&f).unwrap();
    let x = &f.small().elements[r.x.unwrap()];
    assert_eq!(centralizer_element(&g, x).unwrap().order(), 1_814_400 / 630);
}

#[test]
fn criterion_5_psl43_instance() {
    check(5);
    let q: u128 = 3;
    let order = q.pow(6) * (q * q - 1) * (q.pow(3) - 1) * (q.pow(4) - 1) / 2;
    assert_eq!(atlas_lookup("PSL4_3").unwrap().order(), order);
}

#[test]
fn criterion_6_wreath_presentations() {
    check(6);
    // the centralizer of ff^a has index 8, so no single class covers the 16 elements of J0ff^a
    for v in [Variant::HSquared1, Variant::HSquaredQ] {
        let r = presentation_lemma_check(3, v).unwrap();
        let h = r.as_printed.iter().find(|i| i.item == "h").unwrap();
        assert!(!h.holds);
        println!("  {}: printed (h) refuted: {}", r.variant, h.detail);
    }
}

#[test]
fn criterion_7_transfer_and_burnside() {
    check(7);
}

#[test]
fn criterion_8_closure_laws_and_quotients() {
    check(8);
}

#[test]
fn criterion_9_negative_control() {
    check(9);
}
