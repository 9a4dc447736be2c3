//! Brute-force oracles over explicit element lists, independent of stabilizer chains.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use ibiskit::action::{coset_action, subset_action, DEFAULT_INDEX_CAP};
use ibiskit::catalog::{builtin_names, load_catalog};
use ibiskit::{Group, Permutation};

pub type Elem = Vec<u32>;

pub fn g(n: usize, gens: &[&str]) -> Group {
    Group::new(
        n,
        gens.iter().map(|s| Permutation::parse_cycles(s, n).unwrap()).collect(),
    )
    .unwrap()
}

/// `x` then `y`, matching the library's left-to-right products.
pub fn mul(x: &[u32], y: &[u32]) -> Elem {
    x.iter().map(|&i| y[i as usize]).collect()
}

/// Every element of the group, by breadth-first closure under right multiplication by generators.
pub fn closure(group: &Group) -> Vec<Elem> {
    let id: Elem = (0..group.degree() as u32).collect();
    let gens: Vec<Elem> = group.generators().iter().map(|p| p.images().to_vec()).collect();
    let mut seen: HashSet<Elem> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = mul(&x, s);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

pub fn fixing<'a>(elems: &'a [Elem], points: &[usize]) -> Vec<&'a Elem> {
    elems
        .iter()
        .filter(|e| points.iter().all(|&p| e[p] as usize == p))
        .collect()
}

pub fn orbit_of(elems: &[&Elem], p: usize) -> Vec<usize> {
    let mut o: Vec<usize> = elems.iter().map(|e| e[p] as usize).collect();
    o.sort_unstable();
    o.dedup();
    o
}

/// Every irredundant `t`-tuple, by depth-first filtering of the element list.
pub fn irredundant_tuples(elems: &[Elem], degree: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(stab: Vec<&Elem>, degree: usize, t: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == t {
            out.push(prefix.clone());
            return;
        }
        for p in 0..degree {
            if stab.iter().all(|e| e[p] as usize == p) {
                continue;
            }
            let next: Vec<&Elem> = stab.iter().copied().filter(|e| e[p] as usize == p).collect();
            if next.len() == 1 && prefix.len() + 1 < t {
                continue;
            }
            prefix.push(p);
            go(next, degree, t, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(elems.iter().collect(), degree, t, &mut Vec::new(), &mut out);
    out
}

/// Every irredundant base (of any length).
pub fn irredundant_bases(elems: &[Elem], degree: usize) -> Vec<Vec<usize>> {
    fn go(stab: Vec<&Elem>, degree: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if stab.len() == 1 {
            out.push(prefix.clone());
            return;
        }
        for p in 0..degree {
            if stab.iter().all(|e| e[p] as usize == p) {
                continue;
            }
            let next: Vec<&Elem> = stab.iter().copied().filter(|e| e[p] as usize == p).collect();
            prefix.push(p);
            go(next, degree, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(elems.iter().collect(), degree, &mut Vec::new(), &mut out);
    out
}

/// Smallest `t` with a `t`-set whose pointwise stabilizer is trivial.
pub fn min_base_size(elems: &[Elem], degree: usize) -> usize {
    irredundant_bases(elems, degree)
        .iter()
        .map(Vec::len)
        .min()
        .expect("some base exists")
}

/// Every ordering of every irredundant base is irredundant (brute force).
pub fn brute_reorder_invariant(elems: &[Elem], degree: usize) -> bool {
    let stab_len = |pts: &[usize]| fixing(elems, pts).len();
    irredundant_bases(elems, degree).iter().all(|base| {
        let mut idx: Vec<usize> = (0..base.len()).collect();
        loop {
            let pts: Vec<usize> = idx.iter().map(|&i| base[i]).collect();
            if (0..pts.len()).any(|i| stab_len(&pts[..i + 1]) >= stab_len(&pts[..i])) {
                return false;
            }
            // next permutation of idx
            let Some(i) = (1..idx.len()).rev().find(|&i| idx[i - 1] < idx[i]) else {
                return true;
            };
            let j = (i..idx.len()).rev().find(|&j| idx[j] > idx[i - 1]).unwrap();
            idx.swap(i - 1, j);
            idx[i..].reverse();
        }
    })
}

pub struct Named {
    pub name: String,
    pub group: Group,
}

fn named(name: &str, group: Group) -> Named {
    Named {
        name: name.to_string(),
        group,
    }
}

/// Catalog entries of order at most `max_order`.
pub fn catalog_small(max_order: u128) -> Vec<Named> {
    builtin_names()
        .into_iter()
        .map(|n| named(n, load_catalog(n).unwrap()))
        .filter(|n| n.group.order() <= max_order)
        .collect()
}

/// Groups of order at most 10,000: small catalog entries plus hand-built
/// intransitive, imprimitive, and induced actions.
pub fn suite() -> Vec<Named> {
    let mut out = catalog_small(10_000);
    let s5 = load_catalog("S5").unwrap();
    let a5 = load_catalog("A5").unwrap();
    let s4 = load_catalog("S4").unwrap();
    let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
    out.push(named("S5 pairs", subset_action(&s5, 2, DEFAULT_INDEX_CAP).unwrap().image().clone()));
    out.push(named("A5 pairs", subset_action(&a5, 2, DEFAULT_INDEX_CAP).unwrap().image().clone()));
    out.push(named("S5 triples", subset_action(&s5, 3, DEFAULT_INDEX_CAP).unwrap().image().clone()));
    out.push(named("S4 on cosets of V4", coset_action(&s4, &v4, DEFAULT_INDEX_CAP).unwrap().image().clone()));
    out.push(named("S4 regular", coset_action(&s4, &Group::trivial(4), DEFAULT_INDEX_CAP).unwrap().image().clone()));
    out.push(named("C2 x C3 with fixed point", g(6, &["(1 2)", "(3 4 5)"])));
    out.push(named("S3 x S3", g(6, &["(1 2)", "(1 2 3)", "(4 5)", "(4 5 6)"])));
    out.push(named("C8", g(8, &["(1 2 3 4 5 6 7 8)"])));
    out.push(named("Klein four on 10", g(10, &["(1 2)(3 4)(7 8)(9 10)", "(3 4)(5 6)(7 9)(8 10)"])));
    out.push(named("trivial", Group::trivial(3)));
    out.push(named("D12 on 6", g(6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"])));
    out
}

/// Transitive catalog entries of degree at most 12 and order at most 10,000, plus S5 on pairs.
pub fn triangle_suite() -> Vec<(String, Group)> {
    let mut out: Vec<(String, Group)> = catalog_small(10_000)
        .into_iter()
        .filter(|n| n.group.degree() <= 12 && n.group.is_transitive())
        .map(|n| (n.name, n.group))
        .collect();
    let s5 = load_catalog("S5").unwrap();
    out.push(("S5 pairs".into(), subset_action(&s5, 2, DEFAULT_INDEX_CAP).unwrap().image().clone()));
    out
}
