//! The exhaustive IBIS decision.
//!
//! With `threads > 1` the representative search is cut at the shallowest
//! depth with enough nodes, the subtrees are searched in parallel, and the
//! results are merged in canonical order. Node and tuple counts are
//! attributed exactly as the sequential search would count them, so the
//! certificate is identical for every thread count.

use std::ops::ControlFlow;

use rayon::prelude::*;

use super::search::{self, root, Target, Walker};
use super::{base_size_with_budget, IrredundantTuple, Mode};
use crate::certificate::{Decision, IbisCertificate, Method, Stats, Witness};
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Debug)]
pub struct IbisOptions {
    /// Cap on search nodes, shared by the base-size search and the enumeration.
    pub budget: u64,
    /// Worker threads for the representative search (1 = sequential).
    pub threads: usize,
    /// Free-form description recorded in the certificate.
    pub label: String,
}

impl Default for IbisOptions {
    fn default() -> Self {
        Self {
            budget: 100_000_000,
            threads: 1,
            label: "group".into(),
        }
    }
}

/// Extends an irredundant tuple to a base by repeatedly appending the least
/// point moved by the current stabilizer.
pub fn extend_to_base(g: &Group, tuple: &IrredundantTuple) -> Result<IrredundantTuple> {
    let mut points = tuple.points().to_vec();
    let mut orders = tuple.stab_orders().to_vec();
    let mut stab = g.tuple_stabilizer(&points)?;
    while stab.order() > 1 {
        let p = (0..g.degree()).find(|&p| stab.moves(p)).expect("nontrivial group moves a point");
        let orbit = stab.orbit_transversal(p)?.len() as u128;
        orders.push(stab.order() / orbit);
        points.push(p);
        stab = stab.point_stabilizer(p)?;
    }
    Ok(IrredundantTuple::from_parts(points, orders))
}

struct Outcome {
    witness: Option<IrredundantTuple>,
    nodes: u64,
    reps: u64,
}

fn first_nontrivial_sequential(g: &Group, b: usize, budget: u64) -> Result<Outcome> {
    let mut witness = None;
    let stats = search::enumerate_irredundant_tuples(g, b, Mode::Representatives, budget, |t| {
        if t.final_order() > 1 {
            witness = Some(t.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(Outcome {
        witness,
        nodes: stats.nodes,
        reps: stats.emitted,
    })
}

enum Event {
    Shallow,
    Frontier(usize),
}

enum SubResult {
    Found { nodes: u64, reps: u64, tuple: IrredundantTuple },
    Complete { nodes: u64, reps: u64 },
    Exhausted,
}

fn first_nontrivial_parallel(g: &Group, b: usize, budget: u64, threads: usize) -> Result<Outcome> {
    if b < 2 {
        return first_nontrivial_sequential(g, b, budget);
    }
    struct Node {
        tuple: IrredundantTuple,
        group: Option<Group>,
        children: Vec<usize>,
    }
    let mut tree = vec![Node {
        tuple: root(g),
        group: Some(g.clone()),
        children: Vec::new(),
    }];
    let mut level = vec![0usize];
    let mut depth = 0;
    let mut shallow_nodes = 0u64;
    while depth + 1 < b && level.len() < 2 * threads {
        let mut next = Vec::new();
        for &id in &level {
            let Some(stab) = tree[id].group.clone() else { continue };
            let order = tree[id].tuple.final_order();
            for orbit in stab.orbits().into_iter().filter(|o| o.len() > 1) {
                let p = orbit[0];
                let child_order = order / orbit.len() as u128;
                let mut pts = tree[id].tuple.points().to_vec();
                let mut ords = tree[id].tuple.stab_orders().to_vec();
                pts.push(p);
                ords.push(child_order);
                let group = (child_order > 1).then(|| stab.point_stabilizer(p)).transpose()?;
                let child = tree.len();
                tree.push(Node {
                    tuple: IrredundantTuple::from_parts(pts, ords),
                    group,
                    children: Vec::new(),
                });
                tree[id].children.push(child);
                next.push(child);
                shallow_nodes += 1;
                if shallow_nodes > budget {
                    return Err(Error::BudgetExhausted { budget, nodes: shallow_nodes });
                }
            }
        }
        level = next;
        depth += 1;
    }

    // Preorder over the shallow tree; frontier nodes are the expanded level.
    let frontier: Vec<usize> = level.into_iter().filter(|&id| tree[id].group.is_some()).collect();
    let is_frontier = |id: usize| frontier.binary_search(&id).is_ok();
    let mut events = Vec::new();
    let mut stack: Vec<usize> = tree[0].children.iter().rev().copied().collect();
    while let Some(id) = stack.pop() {
        if is_frontier(id) {
            events.push(Event::Frontier(id));
        } else {
            events.push(Event::Shallow);
            stack.extend(tree[id].children.iter().rev().copied());
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let results: Vec<Result<SubResult>> = pool.install(|| {
        frontier
            .par_iter()
            .map(|&id| {
                let node = &tree[id];
                let mut found = None;
                let mut w = Walker::new(Target::Length(b), Mode::Representatives, budget, |t: &IrredundantTuple| {
                    if t.final_order() > 1 {
                        found = Some(t.clone());
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                match w.run_from(&node.tuple, node.group.as_ref().expect("frontier has a group")) {
                    Ok(_) => {
                        let (nodes, reps) = (w.nodes, w.emitted);
                        drop(w);
                        Ok(match found {
                            Some(tuple) => SubResult::Found { nodes, reps, tuple },
                            None => SubResult::Complete { nodes, reps },
                        })
                    }
                    Err(Error::BudgetExhausted { .. }) => Ok(SubResult::Exhausted),
                    Err(e) => Err(e),
                }
            })
            .collect()
    });
    let mut results: Vec<Option<Result<SubResult>>> = results.into_iter().map(Some).collect();

    let mut count = 0u64;
    let mut reps = 0u64;
    let exhausted = |nodes| Err(Error::BudgetExhausted { budget, nodes });
    for ev in events {
        count += 1;
        if count > budget {
            return exhausted(count);
        }
        let Event::Frontier(id) = ev else { continue };
        let k = frontier.binary_search(&id).expect("frontier id");
        match results[k].take().expect("each frontier node merged once")? {
            SubResult::Exhausted => return exhausted(budget + 1),
            SubResult::Complete { nodes, reps: r } => {
                count += nodes;
                reps += r;
                if count > budget {
                    return exhausted(count);
                }
            }
            SubResult::Found { nodes, reps: r, tuple } => {
                count += nodes;
                if count > budget {
                    return exhausted(count);
                }
                return Ok(Outcome {
                    witness: Some(tuple),
                    nodes: count,
                    reps: reps + r,
                });
            }
        }
    }
    Ok(Outcome {
        witness: None,
        nodes: count,
        reps,
    })
}

/// Decides whether `g` is IBIS by examining one irredundant `b(G)`-tuple per
/// `G`-orbit. A tuple with nontrivial stabilizer is extended to a full base
/// and returned as the `NOT_IBIS` witness. Budget exhaustion gives an
/// `UNDECIDED` certificate, never a guess.
pub fn is_ibis(g: &Group, opts: &IbisOptions) -> Result<IbisCertificate> {
    let mut cert = IbisCertificate::new(opts.label.clone(), g, None);
    cert.method = Method::Exhaustive;
    if g.order() == 1 {
        cert.b = Some(0);
        cert.decision = Decision::Ibis;
        return Ok(cert);
    }
    let b = match base_size_with_budget(g, opts.budget) {
        Ok(b) => b,
        Err(Error::BudgetExhausted { nodes, .. }) => {
            cert.stats.nodes = nodes;
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    cert.b = Some(b);
    let outcome = if opts.threads > 1 {
        first_nontrivial_parallel(g, b, opts.budget, opts.threads)
    } else {
        first_nontrivial_sequential(g, b, opts.budget)
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(Error::BudgetExhausted { nodes, .. }) => {
            cert.stats.nodes = nodes;
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    cert.stats = Stats {
        nodes: outcome.nodes,
        reps_examined: outcome.reps,
    };
    match outcome.witness {
        Some(t) => {
            let full = extend_to_base(g, &t)?;
            cert.decision = Decision::NotIbis;
            cert.witness = Some(Witness::from_tuple(&full));
        }
        None => cert.decision = Decision::Ibis,
    }
    Ok(cert)
}
