use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use super::{enumerate_irredundant_bases, IrredundantTuple, Mode};
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReorderCheck {
    /// Every ordering of the points is irredundant.
    Invariant,
    /// The first ordering (in lexicographic order of index permutations) that is not.
    Fails {
        ordering: Vec<usize>,
        reordered: IrredundantTuple,
    },
}

/// Pointwise stabilizer orders of subsets of a fixed point list, keyed by bitmask.
struct SubsetOrders<'a> {
    g: &'a Group,
    points: &'a [usize],
    memo: HashMap<u64, u128>,
}

impl SubsetOrders<'_> {
    fn order(&mut self, mask: u64) -> Result<u128> {
        if let Some(&o) = self.memo.get(&mask) {
            return Ok(o);
        }
        let subset: Vec<usize> = (0..self.points.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.points[i])
            .collect();
        let o = *self.g.stabilizer_orders(&subset)?.last().expect("non-empty");
        self.memo.insert(mask, o);
        Ok(o)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Checks that every reordering of an irredundant base is irredundant.
///
/// The stabilizer of a prefix depends only on its set of points, so the
/// orders are memoized per subset and each of the `t!` orderings costs `O(t)`.
pub fn check_reorder_invariance(g: &Group, tuple: &IrredundantTuple, budget: u64) -> Result<ReorderCheck> {
    if !tuple.is_irredundant_base() {
        return Err(Error::Invalid("reorder check needs a full irredundant base".into()));
    }
    let t = tuple.len();
    if t > 20 {
        return Err(Error::BudgetExhausted { budget, nodes: budget.saturating_add(1) });
    }
    let factorial: u64 = (1..=t as u64).product();
    if factorial > budget {
        return Err(Error::BudgetExhausted { budget, nodes: factorial });
    }
    let mut orders = SubsetOrders {
        g,
        points: tuple.points(),
        memo: HashMap::new(),
    };
    let mut perm: Vec<usize> = (0..t).collect();
    loop {
        let mut mask = 0u64;
        let mut prev = orders.order(0)?;
        let mut chain = vec![prev];
        let mut ok = true;
        for &i in &perm {
            mask |= 1 << i;
            let o = orders.order(mask)?;
            chain.push(o);
            if o >= prev {
                ok = false;
            }
            prev = o;
        }
        if !ok {
            let points = perm.iter().map(|&i| tuple.points()[i]).collect();
            return Ok(ReorderCheck::Fails {
                ordering: perm,
                reordered: IrredundantTuple::from_parts(points, chain),
            });
        }
        if !next_permutation(&mut perm) {
            return Ok(ReorderCheck::Invariant);
        }
    }
}

/// Runs the reorder check on one base per distinct point set among all
/// irredundant bases; returns the first base with a failing reordering.
pub fn all_bases_reorder_invariant(g: &Group, budget: u64) -> Result<Option<IrredundantTuple>> {
    let mut bases = Vec::new();
    let mut seen = HashSet::new();
    enumerate_irredundant_bases(g, Mode::All, budget, |t| {
        let mut key = t.points().to_vec();
        key.sort_unstable();
        if seen.insert(key) {
            bases.push(t.clone());
        }
        ControlFlow::Continue(())
    })?;
    for b in bases {
        if let ReorderCheck::Fails { .. } = check_reorder_invariance(g, &b, budget)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}
