mod common;

use common::closure;
use ibiskit::action::{coset_action, primitivity, subset_action, Primitivity, DEFAULT_INDEX_CAP};
use ibiskit::catalog::load_catalog;
use ibiskit::rng::seeded;
use ibiskit::Group;

#[test]
fn natural_action_as_cosets() {
    let s4 = load_catalog("S4").unwrap();
    let a = coset_action(&s4, &s4.point_stabilizer(0).unwrap(), DEFAULT_INDEX_CAP).unwrap();
    assert_eq!(a.target_degree(), 4);
    let img = a.image();
    let mut got: Vec<usize> = img.point_stabilizer(0).unwrap().orbits().iter().map(Vec::len).collect();
    let mut want: Vec<usize> = s4.point_stabilizer(0).unwrap().orbits().iter().map(Vec::len).collect();
    got.sort_unstable();
    want.sort_unstable();
    assert_eq!(got, want);
}

#[test]
fn m12_on_cosets_of_m11() {
    let m12 = load_catalog("M12").unwrap();
    let h = m12.point_stabilizer(0).unwrap();
    let a = coset_action(&m12, &h, DEFAULT_INDEX_CAP).unwrap();
    assert_eq!(a.target_degree(), 12);
    assert!(a.is_faithful());
    assert_eq!(a.image().point_stabilizer(0).unwrap().order(), 7920);
    assert!(a.check_homomorphism(100, 0).unwrap());
}

#[test]
fn stabilizer_of_coset_is_conjugate() {
    let m11 = load_catalog("M11").unwrap();
    let h = m11.point_stabilizer(3).unwrap();
    let a = coset_action(&m11, &h, DEFAULT_INDEX_CAP).unwrap();
    let mut rng = seeded(8);
    for _ in 0..20 {
        let x = m11.random_element(&mut rng);
        let point = a.image_of(&x).unwrap().apply(0);
        assert_eq!(a.image().point_stabilizer(point).unwrap().order(), h.order());
    }
}

#[test]
fn regular_and_trivial_actions() {
    let s3 = load_catalog("S3").unwrap();
    let reg = coset_action(&s3, &Group::trivial(3), DEFAULT_INDEX_CAP).unwrap();
    assert_eq!(reg.target_degree(), 6);
    assert!(reg.is_faithful());
    assert_eq!(reg.image().point_stabilizer(0).unwrap().order(), 1);
    let one = coset_action(&s3, &s3, DEFAULT_INDEX_CAP).unwrap();
    assert_eq!(one.target_degree(), 1);
    assert!(!one.is_faithful());
}

#[test]
fn subset_actions() {
    let m11 = load_catalog("M11").unwrap();
    let a = subset_action(&m11, 2, DEFAULT_INDEX_CAP).unwrap();
    assert_eq!(a.target_degree(), 55);
    assert!(a.is_faithful());
    assert_eq!(a.is_primitive(), Primitivity::Primitive);
    assert!(a.check_homomorphism(100, 1).unwrap());
    let s3 = load_catalog("S3").unwrap();
    let c = subset_action(&s3, 2, DEFAULT_INDEX_CAP).unwrap();
    assert_eq!(c.image().order(), 6);
    let s5 = load_catalog("S5").unwrap();
    let p = subset_action(&s5, 2, DEFAULT_INDEX_CAP).unwrap();
    assert_eq!(p.target_degree(), 10);
    // orbit times setwise stabilizer is the group order
    let img = p.image();
    for point in [0, 3, 9] {
        let orbit = img.orbit(point).unwrap().len() as u128;
        assert_eq!(orbit * img.point_stabilizer(point).unwrap().order(), 120);
    }
}

#[test]
fn homomorphism_on_every_suite_action() {
    for name in ["S4", "A5", "D10", "AGL1_7", "L2_7"] {
        let g = load_catalog(name).unwrap();
        let h = g.point_stabilizer(0).unwrap();
        assert!(coset_action(&g, &h, DEFAULT_INDEX_CAP).unwrap().check_homomorphism(100, 2).unwrap());
        assert!(subset_action(&g, 2, DEFAULT_INDEX_CAP).unwrap().check_homomorphism(100, 3).unwrap());
    }
}

#[test]
fn primitivity_examples() {
    let d8 = load_catalog("D8").unwrap();
    match primitivity(&d8) {
        Primitivity::Imprimitive { block } => assert_eq!(block.labels(), vec![1, 3]),
        other => panic!("{other:?}"),
    }
    assert_eq!(primitivity(&load_catalog("S4").unwrap()), Primitivity::Primitive);
    assert!(matches!(
        primitivity(&load_catalog("S3wrS2").unwrap()),
        Primitivity::Imprimitive { .. }
    ));
    assert_eq!(primitivity(&common::g(5, &["(1 2)", "(3 4 5)"])), Primitivity::Intransitive);
}

#[test]
fn primitivity_matches_brute_force_blocks() {
    // a transitive group is imprimitive iff some 2..n-1 subset containing point 1 is a block
    for name in ["D8", "D10", "S3wrS2", "A4", "V4", "C5", "AGL1_7", "L2_5", "S4"] {
        let g = load_catalog(name).unwrap();
        let n = g.degree();
        let elems = closure(&g);
        let is_block = |mask: u32| {
            elems.iter().all(|e| {
                let img: u32 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| 1 << e[i]).sum();
                img == mask || img & mask == 0
            })
        };
        let brute_imprimitive = (1u32..(1 << n) - 1)
            .filter(|m| m & 1 == 1 && m.count_ones() > 1)
            .any(is_block);
        let got = matches!(primitivity(&g), Primitivity::Imprimitive { .. });
        assert_eq!(got, brute_imprimitive, "{name}");
    }
}
