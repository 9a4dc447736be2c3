//! Depth-first search over irredundant tuples.
//!
//! A node is a prefix `(b₁,…,bᵢ)` together with its stabilizer `S`. Its
//! children extend the prefix by a point moved by `S`; in representative mode
//! only the least point of each nontrivial `S`-orbit, visited in increasing
//! order. The child's stabilizer order is `|S| / |orbit|`, so leaves never
//! need a stabilizer computed.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::ibis::IrredundantTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// One tuple per `G`-orbit on irredundant tuples.
    Representatives,
    /// Every irredundant tuple. Brute force; small groups only.
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    /// Search nodes visited (prefixes of length ≥ 1).
    pub nodes: u64,
    /// Tuples handed to the visitor.
    pub emitted: u64,
    /// Whether the visitor stopped the search.
    pub stopped: bool,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Target {
    Length(usize),
    Bases,
}

pub(crate) struct Walker<F> {
    target: Target,
    mode: Mode,
    budget: u64,
    pub(crate) nodes: u64,
    pub(crate) emitted: u64,
    points: Vec<usize>,
    orders: Vec<u128>,
    visit: F,
}

impl<F> Walker<F>
where
    F: FnMut(&IrredundantTuple) -> ControlFlow<()>,
{
    pub(crate) fn new(target: Target, mode: Mode, budget: u64, visit: F) -> Self {
        Self {
            target,
            mode,
            budget,
            nodes: 0,
            emitted: 0,
            points: Vec::new(),
            orders: Vec::new(),
            visit,
        }
    }

    /// Searches below the node `prefix`, whose stabilizer is `stab`.
    pub(crate) fn run_from(&mut self, prefix: &IrredundantTuple, stab: &Group) -> Result<ControlFlow<()>> {
        self.points = prefix.points().to_vec();
        self.orders = prefix.stab_orders().to_vec();
        self.dfs(stab)
    }

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

    fn emit(&mut self) -> ControlFlow<()> {
        self.emitted += 1;
        let t = IrredundantTuple::from_parts(self.points.clone(), self.orders.clone());
        (self.visit)(&t)
    }

    fn dfs(&mut self, stab: &Group) -> Result<ControlFlow<()>> {
        let depth = self.points.len();
        let order = *self.orders.last().expect("root order");
        let orbits = stab.orbits();
        let mut items: Vec<(usize, usize)> = Vec::new();
        for (k, orbit) in orbits.iter().enumerate().filter(|(_, o)| o.len() > 1) {
            match self.mode {
                Mode::Representatives => items.push((orbit[0], k)),
                Mode::All => items.extend(orbit.iter().map(|&p| (p, k))),
            }
        }
        if self.mode == Mode::All {
            items.sort_unstable();
        }

        let mut rep_stabs: HashMap<usize, (Group, crate::group::Orbit)> = HashMap::new();
        for (p, k) in items {
            self.tick()?;
            let child_order = order / orbits[k].len() as u128;
            self.points.push(p);
            self.orders.push(child_order);
            let leaf = match self.target {
                Target::Length(t) => depth + 1 == t,
                Target::Bases => child_order == 1,
            };
            let flow = if leaf {
                self.emit()
            } else if child_order == 1 {
                ControlFlow::Continue(())
            } else {
                let rep = orbits[k][0];
                let child = if p == rep {
                    stab.point_stabilizer(p)?
                } else {
                    if !rep_stabs.contains_key(&k) {
                        let s = stab.point_stabilizer(rep)?;
                        let o = stab.orbit_transversal(rep)?;
                        rep_stabs.insert(k, (s, o));
                    }
                    let (s, o) = &rep_stabs[&k];
                    let u = o.transversal(p).expect("p in orbit of rep");
                    s.conjugate(&u)?
                };
                self.dfs(&child)?
            };
            self.points.pop();
            self.orders.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

pub(crate) fn root(g: &Group) -> IrredundantTuple {
    IrredundantTuple::from_parts(Vec::new(), vec![g.order()])
}

/// Streams irredundant tuples of length `t` to `visit` in canonical order.
///
/// Tuples whose stabilizer becomes trivial before length `t` cannot be
/// extended and are not emitted. Exceeding `budget` search nodes yields
/// [`Error::BudgetExhausted`]; the tuples visited so far were already streamed.
pub fn enumerate_irredundant_tuples<F>(g: &Group, t: usize, mode: Mode, budget: u64, visit: F) -> Result<EnumStats>
where
    F: FnMut(&IrredundantTuple) -> ControlFlow<()>,
{
    if t == 0 {
        return Err(Error::Invalid("tuple length must be at least 1".into()));
    }
    let mut w = Walker::new(Target::Length(t), mode, budget, visit);
    let flow = w.run_from(&root(g), g)?;
    Ok(EnumStats {
        nodes: w.nodes,
        emitted: w.emitted,
        stopped: flow.is_break(),
    })
}

/// Streams irredundant bases of every length (tuples whose final stabilizer is trivial).
pub fn enumerate_irredundant_bases<F>(g: &Group, mode: Mode, budget: u64, mut visit: F) -> Result<EnumStats>
where
    F: FnMut(&IrredundantTuple) -> ControlFlow<()>,
{
    if g.order() == 1 {
        let flow = visit(&root(g));
        return Ok(EnumStats {
            nodes: 0,
            emitted: 1,
            stopped: flow.is_break(),
        });
    }
    let mut w = Walker::new(Target::Bases, mode, budget, visit);
    let flow = w.run_from(&root(g), g)?;
    Ok(EnumStats {
        nodes: w.nodes,
        emitted: w.emitted,
        stopped: flow.is_break(),
    })
}

/// The minimum length of a base; 0 for the trivial group.
pub fn base_size(g: &Group) -> usize {
    base_size_with_budget(g, u64::MAX).expect("unbounded budget")
}

/// Branch and bound over orbit representatives. A branch is cut when it
/// cannot beat the best base found: each further point divides the
/// stabilizer order by at most its largest orbit length, and orbit lengths
/// only shrink down the tree.
pub fn base_size_with_budget(g: &Group, budget: u64) -> Result<usize> {
    if g.order() == 1 {
        return Ok(0);
    }
    // The chain's base is irredundant, hence an upper bound.
    let mut bb = BranchAndBound {
        best: g.chain().base().len(),
        nodes: 0,
        budget,
    };
    bb.dfs(g, g.order(), 0)?;
    Ok(bb.best)
}

struct BranchAndBound {
    best: usize,
    nodes: u64,
    budget: u64,
}

fn steps_needed(order: u128, max_orbit: usize) -> usize {
    let mut reach = 1u128;
    let mut r = 0;
    while reach < order {
        reach = reach.saturating_mul(max_orbit as u128);
        r += 1;
    }
    r
}

impl BranchAndBound {
    fn dfs(&mut self, stab: &Group, order: u128, depth: usize) -> Result<()> {
        if depth + 1 >= self.best {
            return Ok(());
        }
        let mut orbits: Vec<Vec<usize>> = stab.orbits().into_iter().filter(|o| o.len() > 1).collect();
        orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let Some(max_orbit) = orbits.first().map(Vec::len) else {
            return Ok(());
        };
        if depth + steps_needed(order, max_orbit) >= self.best {
            return Ok(());
        }
        for orbit in &orbits {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted {
                    budget: self.budget,
                    nodes: self.nodes,
                });
            }
            let child_order = order / orbit.len() as u128;
            if child_order == 1 {
                self.best = depth + 1;
                return Ok(());
            }
            if depth + 2 >= self.best {
                continue;
            }
            let child = stab.point_stabilizer(orbit[0])?;
            self.dfs(&child, child_order, depth + 1)?;
            if depth + 1 >= self.best {
                return Ok(());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn g(n: usize, gens: &[&str]) -> Group {
        Group::new(
            n,
            gens.iter().map(|s| Permutation::parse_cycles(s, n).unwrap()).collect(),
        )
        .unwrap()
    }

    fn collect(g: &Group, t: usize, mode: Mode) -> Vec<IrredundantTuple> {
        let mut out = Vec::new();
        enumerate_irredundant_tuples(g, t, mode, u64::MAX, |x| {
            out.push(x.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
        out
    }

    #[test]
    fn s3_pairs() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        let all = collect(&s3, 2, Mode::All);
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|t| t.stab_orders() == [6, 2, 1]));
        let reps = collect(&s3, 2, Mode::Representatives);
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].points(), &[0, 1]);
    }

    #[test]
    fn length_one_representatives_are_orbit_minima() {
        let h = g(7, &["(1 2)", "(4 5 6)"]);
        let reps = collect(&h, 1, Mode::Representatives);
        let pts: Vec<usize> = reps.iter().map(|t| t.points()[0]).collect();
        assert_eq!(pts, vec![0, 3]);
    }

    #[test]
    fn base_sizes() {
        assert_eq!(base_size(&g(4, &["(1 2)", "(1 2 3 4)"])), 3);
        assert_eq!(base_size(&g(3, &["(1 2 3)"])), 1);
        assert_eq!(base_size(&g(5, &[])), 0);
        assert_eq!(base_size(&g(6, &["(1 2)", "(3 4)", "(5 6)"])), 3);
    }

    #[test]
    fn zero_length_rejected() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        assert!(enumerate_irredundant_tuples(&s3, 0, Mode::All, 10, |_| ControlFlow::Continue(())).is_err());
    }

    #[test]
    fn budget_reports_progress() {
        let s5 = g(5, &["(1 2)", "(1 2 3 4 5)"]);
        let mut seen = 0;
        let err = enumerate_irredundant_tuples(&s5, 4, Mode::All, 20, |_| {
            seen += 1;
            ControlFlow::Continue(())
        })
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { budget: 20, nodes: 21 }));
        assert!(seen > 0);
    }
}
