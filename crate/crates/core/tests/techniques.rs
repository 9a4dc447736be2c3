mod common;

use std::ops::ControlFlow;

use common::{closure, fixing, irredundant_tuples};
use ibiskit::action::{coset_action, subset_action, DEFAULT_INDEX_CAP};
use ibiskit::catalog::load_catalog;
use ibiskit::ibis::{
    base_size, enumerate_irredundant_tuples, t1_random_search, t2_conjugate_chain, t3_restricted_search,
    verify_t2_chain, Mode,
};
use ibiskit::{Decision, Group, Method};
use proptest::prelude::*;

fn pairs(name: &str) -> Group {
    subset_action(&load_catalog(name).unwrap(), 2, DEFAULT_INDEX_CAP)
        .unwrap()
        .image()
        .clone()
}

#[test]
fn t1_finds_long_base_in_s5_pairs() {
    let g = pairs("S5");
    let b = base_size(&g);
    assert_eq!(b, 3);
    let mut hits = 0;
    for seed in 0..10 {
        let Some(r) = t1_random_search(&g, b, seed, 100_000) else { continue };
        assert_eq!(r.tuple.len(), 3);
        assert!(r.tuple.is_irredundant() && r.tuple.final_order() > 1);
        assert!(r.tuple.replays(&g).unwrap());
        let cert = r.certificate(&g, "S5 pairs", Some(b)).unwrap();
        assert_eq!(cert.method, Method::T1);
        assert_eq!(cert.seed, Some(seed));
        assert_eq!(cert.verify(&g).unwrap(), Ok(()));
        if cert.decision == Decision::NotIbis && cert.witness.as_ref().unwrap().points.len() == 4 {
            hits += 1;
        }
        // replay from the seed alone
        assert_eq!(t1_random_search(&g, b, seed, 100_000), Some(r));
    }
    assert!(hits > 0);
}

#[test]
fn t1_finds_nothing_in_ibis_groups() {
    let m12 = load_catalog("M12").unwrap();
    assert!(t1_random_search(&m12, 5, 0, 5_000).is_none());
    let s4 = load_catalog("S4").unwrap();
    let r = t1_random_search(&s4, 1, 9, 100).unwrap();
    assert_eq!(r.tuple.stab_orders(), &[24, 6]);
}

#[test]
fn t2_symmetric_over_point_stabilizer() {
    let s5 = load_catalog("S5").unwrap();
    let h = s5.point_stabilizer(0).unwrap();
    let c = t2_conjugate_chain(&s5, &h, 2, 0, 1_000, 1_000_000).unwrap().unwrap();
    assert_eq!(c.orders, vec![120, 24, 6]);
    assert!(verify_t2_chain(&s5, &h, &c.elements, &c.orders, 1_000_000).unwrap());
    // brute force over all pairs x1, x2 agrees that 6 is the only possible end
    let elems = closure(&s5);
    let ends: std::collections::BTreeSet<usize> = irredundant_tuples(&elems, 5, 2)
        .iter()
        .map(|t| fixing(&elems, t).len())
        .collect();
    assert_eq!(ends, [6].into());

    let action = coset_action(&s5, &h, DEFAULT_INDEX_CAP).unwrap();
    let cert = c.certificate(&action, "S5 cosets", Some(4), 0).unwrap();
    assert_eq!(cert.verify(action.image()).unwrap(), Ok(()));
    assert_eq!(cert.witness.as_ref().unwrap().elements.len(), 2);
}

#[test]
fn t2_m11_matches_enumeration() {
    let m11 = load_catalog("M11").unwrap();
    let h = m11.point_stabilizer(0).unwrap();
    let mut exists = false;
    enumerate_irredundant_tuples(&m11, 3, Mode::Representatives, u64::MAX, |t| {
        exists |= t.final_order() > 1;
        ControlFlow::Continue(())
    })
    .unwrap();
    assert!(exists);
    let c = t2_conjugate_chain(&m11, &h, 3, 4, 5_000, 10_000_000).unwrap().unwrap();
    assert_eq!(c.orders, vec![7920, 720, 72, 8]);
    assert!(verify_t2_chain(&m11, &h, &c.elements, &c.orders, 10_000_000).unwrap());
    let mut tampered = c.orders.clone();
    tampered[3] = 9;
    assert!(!verify_t2_chain(&m11, &h, &c.elements, &tampered, 10_000_000).unwrap());
}

#[test]
fn t3_restriction_to_point_stabilizer() {
    let s7 = load_catalog("S7").unwrap();
    let action = subset_action(&s7, 2, DEFAULT_INDEX_CAP).unwrap();
    let g = action.image().clone();
    let s6 = s7.point_stabilizer(6).unwrap();
    let k = Group::new(
        g.degree(),
        s6.generators().iter().map(|x| action.image_of(x).unwrap()).collect(),
    )
    .unwrap();
    assert_eq!(k.order(), 720);
    let b = base_size(&g);
    let r = t3_restricted_search(&g, &k, b, 0, 100_000).unwrap().unwrap();
    assert!(r.k_tuple.is_irredundant_base() && r.k_tuple.len() > b);
    assert!(r.g_tuple.is_irredundant_base() && r.g_tuple.len() > b);
    assert_eq!(&r.g_tuple.points()[..r.k_tuple.len()], r.k_tuple.points());
    let cert = r.certificate(&g, "S7 pairs", Some(b)).unwrap();
    assert_eq!(cert.decision, Decision::NotIbis);
    assert_eq!(cert.verify(&g).unwrap(), Ok(()));
}

#[test]
fn t3_degenerate_restrictions() {
    let g = pairs("S5");
    assert!(t3_restricted_search(&g, &Group::trivial(10), 3, 0, 1_000).unwrap().is_none());
    for seed in 0..5 {
        let t1 = t1_random_search(&g, 3, seed, 100_000);
        let t3 = t3_restricted_search(&g, &g, 3, seed, 100_000).unwrap();
        match (t1, t3) {
            (Some(a), Some(b)) => assert_eq!(&b.k_tuple.points()[..3], a.tuple.points()),
            (None, None) => {}
            other => panic!("{other:?}"),
        }
    }
    let outside = common::g(10, &["(1 2)"]);
    assert!(t3_restricted_search(&g, &outside, 3, 0, 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn technique_certificates_verify(idx in 0usize..4, seed in any::<u64>(), target in 1usize..4) {
        let (name, g) = [
            ("S5 pairs", pairs("S5")),
            ("A5 pairs", pairs("A5")),
            ("S3wrS2", load_catalog("S3wrS2").unwrap()),
            ("M11", load_catalog("M11").unwrap()),
        ][idx].clone();
        let b = base_size(&g);
        if let Some(r) = t1_random_search(&g, target, seed, 2_000) {
            prop_assert!(r.tuple.is_irredundant() && r.tuple.final_order() > 1);
            let cert = r.certificate(&g, name, Some(b)).unwrap();
            prop_assert_eq!(cert.verify(&g).unwrap(), Ok(()));
            prop_assert_eq!(t1_random_search(&g, target, seed, 2_000), Some(r));
        }
        let k = g.point_stabilizer(0).unwrap();
        if let Some(r) = t3_restricted_search(&g, &k, target, seed, 2_000).unwrap() {
            let cert = r.certificate(&g, name, Some(b)).unwrap();
            prop_assert_eq!(cert.verify(&g).unwrap(), Ok(()));
        }
    }
}
