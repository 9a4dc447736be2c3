use std::collections::VecDeque;

use ibiskit::catalog::{builtin_names, load_entry, transitivity_degree};
use ibiskit::Group;

/// Size of the orbit of `(1, …, k)` on ordered `k`-tuples, by breadth-first search over a bitset.
fn tuple_orbit_size(g: &Group, k: usize) -> u64 {
    let n = g.degree() as u64;
    let encode = |t: &[usize]| t.iter().rev().fold(0u64, |acc, &p| acc * n + p as u64);
    let decode = |mut c: u64| -> Vec<usize> {
        (0..k)
            .map(|_| {
                let p = (c % n) as usize;
                c /= n;
                p
            })
            .collect()
    };
    let total = n.pow(k as u32);
    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let start = encode(&(0..k).collect::<Vec<_>>());
    seen[(start / 64) as usize] |= 1 << (start % 64);
    let mut queue = VecDeque::from([start]);
    let mut size = 1;
    while let Some(c) = queue.pop_front() {
        let t = decode(c);
        for s in g.generators() {
            let img: Vec<usize> = t.iter().map(|&p| s.apply(p)).collect();
            let d = encode(&img);
            if seen[(d / 64) as usize] >> (d % 64) & 1 == 0 {
                seen[(d / 64) as usize] |= 1 << (d % 64);
                size += 1;
                queue.push_back(d);
            }
        }
    }
    size
}

fn falling(n: usize, k: usize) -> u64 {
    (0..k).map(|i| (n - i) as u64).product()
}

#[test]
fn mathieu_transitivity_by_tuple_orbits() {
    for (name, k, check_next) in [("M11", 4, true), ("M12", 5, true), ("M24", 5, false)] {
        let e = load_entry(name).unwrap();
        let n = e.group.degree();
        assert_eq!(e.meta.transitivity, k);
        assert_eq!(tuple_orbit_size(&e.group, k), falling(n, k), "{name}");
        if check_next {
            assert!(tuple_orbit_size(&e.group, k + 1) < falling(n, k + 1), "{name}");
        }
        assert_eq!(transitivity_degree(&e.group), k, "{name}");
    }
}

#[test]
fn declared_transitivity_is_exact_for_small_entries() {
    for name in builtin_names() {
        let e = load_entry(name).unwrap();
        if e.group.degree() > 8 {
            continue;
        }
        let k = e.meta.transitivity;
        let n = e.group.degree();
        assert_eq!(tuple_orbit_size(&e.group, k), falling(n, k), "{name}");
        if k < n {
            assert!(tuple_orbit_size(&e.group, k + 1) < falling(n, k + 1), "{name}");
        }
    }
}
