//! Irredundant bases and the IBIS decision.
//!
//! A sequence `(b₁,…,b_t)` is irredundant when each `bᵢ₊₁` is moved by the
//! pointwise stabilizer of `b₁,…,bᵢ`, i.e. when the stabilizer orders
//! `|G| > |G_{b₁}| > … > |G_{b₁…b_t}|` strictly decrease. It is a base when
//! the last order is 1. A group is IBIS when all its irredundant bases have
//! the same length, necessarily the base size `b(G)`.
//!
//! The decision procedure rests on this equivalence: `G` is not IBIS iff some
//! irredundant `b(G)`-tuple has a nontrivial stabilizer. Such a tuple extends
//! (append any point its stabilizer moves, repeatedly) to an irredundant base
//! longer than `b(G)`; conversely the length-`b(G)` prefix of a longer
//! irredundant base is such a tuple. Since stabilizer orders are invariant
//! under the action of `G` on tuples, it suffices to examine one tuple per
//! `G`-orbit, which the representative enumeration provides.

mod decide;
mod lemma;
mod matroid;
mod reorder;
mod search;
mod techniques;

pub use decide::{extend_to_base, is_ibis, IbisOptions};
pub use lemma::{lemma_b2_spotcheck, LemmaReport};
pub use matroid::{extract_matroid, verify_base_exchange, BaseMatroid, ExchangeCheck};
pub use reorder::{all_bases_reorder_invariant, check_reorder_invariance, ReorderCheck};
pub use search::{
    base_size, base_size_with_budget, enumerate_irredundant_bases, enumerate_irredundant_tuples,
    EnumStats, Mode,
};
pub use techniques::{
    t1_random_search, t2_conjugate_chain, t3_restricted_search, verify_t2_chain, ConjugateChain,
    RandomSearch, RestrictedSearch,
};

use crate::error::Result;
use crate::group::Group;

/// Ordered points with the stabilizer orders along them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IrredundantTuple {
    points: Vec<usize>,
    stab_orders: Vec<u128>,
}

impl IrredundantTuple {
    /// Computes the stabilizer chain of `points` (0-based) in `g`.
    ///
    /// The result need not be irredundant; check [`is_irredundant`](Self::is_irredundant).
    pub fn compute(g: &Group, points: &[usize]) -> Result<Self> {
        Ok(Self {
            points: points.to_vec(),
            stab_orders: g.stabilizer_orders(points)?,
        })
    }

    pub(crate) fn from_parts(points: Vec<usize>, stab_orders: Vec<u128>) -> Self {
        debug_assert_eq!(points.len() + 1, stab_orders.len());
        Self { points, stab_orders }
    }

    /// 0-based points.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// `|G|, |G_{b₁}|, …, |G_{b₁…b_t}|`.
    pub fn stab_orders(&self) -> &[u128] {
        &self.stab_orders
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn final_order(&self) -> u128 {
        *self.stab_orders.last().expect("at least |G|")
    }

    pub fn is_irredundant(&self) -> bool {
        self.stab_orders.windows(2).all(|w| w[1] < w[0])
    }

    /// Irredundant with trivial final stabilizer.
    pub fn is_irredundant_base(&self) -> bool {
        self.is_irredundant() && self.final_order() == 1
    }

    /// Whether the recorded chain is what `g` gives for these points.
    pub fn replays(&self, g: &Group) -> Result<bool> {
        Ok(g.stabilizer_orders(&self.points)? == self.stab_orders)
    }
}
