//! Subgroup intersection by backtrack search.
//!
//! `A` is given a chain whose base starts with `B`'s base, and `B` a chain
//! along that same base. Working from the bottom level up, the search looks
//! for an element of `A⁽ᵏ⁾ ∩ B` mapping `βₖ` to each point of the basic orbit
//! not yet reached by the generators found so far. A partial element is cut
//! as soon as its base images cannot be matched by any element of `B`.

use super::{Group, StabChain};
use crate::error::{Error, Result};
use crate::group::chain::Level;
use crate::perm::{PermError, Permutation};

/// Elements `h · r` with `h ∈ B⁽ˡᵉᵛᵉˡ⁾`, stored via `r⁻¹`.
#[derive(Clone)]
struct CosetState {
    level: usize,
    r_inv: Vec<u32>,
}

impl CosetState {
    /// Restricts to the elements sending `beta` to `gamma`, if any remain.
    fn constrain(&self, b: &StabChain, beta: usize, gamma: usize) -> Option<CosetState> {
        let delta = self.r_inv[gamma] as usize;
        match b.levels().get(self.level) {
            Some(l) if l.base_point() == beta => {
                if !l.in_orbit(delta) {
                    return None;
                }
                let mut r_inv = self.r_inv.clone();
                l.schreier_vector().divide_in_place(&mut r_inv, delta);
                Some(CosetState {
                    level: self.level + 1,
                    r_inv,
                })
            }
            // beta is fixed by the current stabilizer in B
            _ => (delta == beta).then(|| self.clone()),
        }
    }
}

struct Search<'a> {
    a: &'a StabChain,
    b: &'a StabChain,
    base: &'a [usize],
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                budget: self.budget,
                nodes: self.nodes,
            });
        }
        Ok(())
    }

    /// An element of `A⁽ᵏ⁾ ∩ B` sending `βₖ` to `delta`.
    fn find(&mut self, k: usize, delta: usize, state: &CosetState) -> Result<Option<Permutation>> {
        let Some(st) = state.constrain(self.b, self.base[k], delta) else {
            return Ok(None);
        };
        let g = self.a.levels()[k].schreier_vector().transversal(delta);
        self.descend(k + 1, g, st)
    }

    fn descend(&mut self, j: usize, g: Permutation, st: CosetState) -> Result<Option<Permutation>> {
        self.tick()?;
        if j == self.base.len() {
            return Ok(self.b.contains(&g).then_some(g));
        }
        let level = &self.a.levels()[j];
        for &d in level.orbit() {
            let Some(next) = st.constrain(self.b, self.base[j], g.apply(d)) else {
                continue;
            };
            let cand = &level.schreier_vector().transversal(d) * &g;
            if let Some(x) = self.descend(j + 1, cand, next)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

pub(super) fn intersect(a: &Group, b: &Group, budget: u64) -> Result<Group> {
    let n = a.degree();
    if b.degree() != n {
        return Err(PermError::DegreeMismatch {
            left: n,
            right: b.degree(),
        }
        .into());
    }
    if a.is_trivial() || b.is_trivial() {
        return Ok(Group::trivial(n));
    }
    let ca = a.chain_with_base(&b.chain().base());
    let base = ca.base();
    let cb = b.chain_with_base(&base);

    let mut prefix = vec![CosetState {
        level: 0,
        r_inv: (0..n as u32).collect(),
    }];
    for &beta in &base {
        let next = prefix
            .last()
            .and_then(|s| s.constrain(&cb, beta, beta))
            .expect("identity satisfies every base constraint");
        prefix.push(next);
    }

    let mut search = Search {
        a: &ca,
        b: &cb,
        base: &base,
        nodes: 0,
        budget,
    };
    let mut found: Vec<Permutation> = Vec::new();
    for k in (0..base.len()).rev() {
        let beta = base[k];
        let mut reached = Level::orbit_of(n, beta, &found);
        let mut failed = vec![false; n];
        for &delta in ca.levels()[k].orbit() {
            if delta == beta || reached.in_orbit(delta) || failed[delta] {
                continue;
            }
            match search.find(k, delta, &prefix[k])? {
                Some(g) => {
                    found.push(g);
                    reached = Level::orbit_of(n, beta, &found);
                }
                None => {
                    for &p in Level::orbit_of(n, delta, &found).orbit() {
                        failed[p] = true;
                    }
                }
            }
        }
    }
    Group::new(n, found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, gens: &[&str]) -> Group {
        Group::new(
            n,
            gens.iter().map(|s| Permutation::parse_cycles(s, n).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let i = g(4, &["(1 2)"]).intersect(&g(4, &["(1 2)", "(3 4)"]), 1000).unwrap();
        assert_eq!(i.order(), 2);
        assert!(i.contains(&Permutation::parse_cycles("(1 2)", 4).unwrap()).unwrap());

        let a4 = g(4, &["(1 2 3)", "(2 3 4)"]);
        assert_eq!(a4.intersect(&g(4, &["(1 2)"]), 1000).unwrap().order(), 1);

        let s4 = g(4, &["(1 2)", "(1 2 3 4)"]);
        let i = s4
            .point_stabilizer(0)
            .unwrap()
            .intersect(&s4.point_stabilizer(1).unwrap(), 1000)
            .unwrap();
        assert_eq!(i.order(), 2);
        assert!(i.contains(&Permutation::parse_cycles("(3 4)", 4).unwrap()).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let s6 = g(6, &["(1 2)", "(1 2 3 4 5 6)"]);
        let a6 = g(6, &["(1 2 3)", "(2 3 4 5 6)"]);
        assert!(matches!(s6.intersect(&a6, 2), Err(Error::BudgetExhausted { .. })));
        assert_eq!(s6.intersect(&a6, 100_000).unwrap().order(), 360);
    }
}
