use std::collections::{BTreeSet, HashSet};
use std::ops::ControlFlow;

use super::{enumerate_irredundant_bases, Mode};
use crate::error::Result;
use crate::group::Group;

/// The point sets underlying the irredundant bases of a group.
///
/// For an IBIS group these are the bases of a matroid on the points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseMatroid {
    pub ground_degree: usize,
    /// Sorted 0-based point sets, in lexicographic order.
    pub bases: Vec<Vec<usize>>,
}

impl BaseMatroid {
    pub fn rank(&self) -> Option<usize> {
        let first = self.bases.first()?.len();
        self.bases.iter().all(|b| b.len() == first).then_some(first)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExchangeCheck {
    Holds,
    /// Two members of different sizes; a matroid's bases are equicardinal.
    SizeMismatch { smaller: Vec<usize>, larger: Vec<usize> },
    /// No `y ∈ B₂∖B₁` makes `(B₁∖{x}) ∪ {y}` a member.
    ExchangeFails { b1: Vec<usize>, b2: Vec<usize>, x: usize },
}

/// Collects the distinct point sets of all irredundant bases (brute force).
pub fn extract_matroid(g: &Group, budget: u64) -> Result<BaseMatroid> {
    let mut sets = BTreeSet::new();
    enumerate_irredundant_bases(g, Mode::All, budget, |t| {
        let mut s = t.points().to_vec();
        s.sort_unstable();
        sets.insert(s);
        ControlFlow::Continue(())
    })?;
    Ok(BaseMatroid {
        ground_degree: g.degree(),
        bases: sets.into_iter().collect(),
    })
}

/// Checks the base-exchange axiom: for members `B₁, B₂` and `x ∈ B₁∖B₂`
/// some `y ∈ B₂∖B₁` has `(B₁∖{x}) ∪ {y}` a member.
pub fn verify_base_exchange(m: &BaseMatroid) -> ExchangeCheck {
    if let (Some(small), Some(large)) = (
        m.bases.iter().min_by_key(|b| b.len()),
        m.bases.iter().max_by_key(|b| b.len()),
    ) {
        if small.len() != large.len() {
            return ExchangeCheck::SizeMismatch {
                smaller: small.clone(),
                larger: large.clone(),
            };
        }
    }
    let family: HashSet<&[usize]> = m.bases.iter().map(Vec::as_slice).collect();
    let mut scratch = Vec::new();
    for b1 in &m.bases {
        for b2 in &m.bases {
            for &x in b1.iter().filter(|x| b2.binary_search(x).is_err()) {
                let ok = b2.iter().filter(|y| b1.binary_search(y).is_err()).any(|&y| {
                    scratch.clear();
                    scratch.extend(b1.iter().copied().filter(|&p| p != x));
                    scratch.push(y);
                    scratch.sort_unstable();
                    family.contains(scratch.as_slice())
                });
                if !ok {
                    return ExchangeCheck::ExchangeFails {
                        b1: b1.clone(),
                        b2: b2.clone(),
                        x,
                    };
                }
            }
        }
    }
    ExchangeCheck::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn c2_is_rank_one_uniform() {
        let c2 = Group::new(2, vec![Permutation::parse_cycles("(1 2)", 2).unwrap()]).unwrap();
        let m = extract_matroid(&c2, 100).unwrap();
        assert_eq!(m.bases, vec![vec![0], vec![1]]);
        assert_eq!(m.rank(), Some(1));
        assert_eq!(verify_base_exchange(&m), ExchangeCheck::Holds);
    }

    #[test]
    fn exchange_failure_detected() {
        // {0,1} and {2,3} with nothing in between: not a matroid
        let m = BaseMatroid {
            ground_degree: 4,
            bases: vec![vec![0, 1], vec![2, 3]],
        };
        assert!(matches!(verify_base_exchange(&m), ExchangeCheck::ExchangeFails { x: 0, .. }));
        let m = BaseMatroid {
            ground_degree: 4,
            bases: vec![vec![0], vec![1, 2]],
        };
        assert!(matches!(verify_base_exchange(&m), ExchangeCheck::SizeMismatch { .. }));
    }

    #[test]
    fn trivial_group_has_empty_base() {
        let m = extract_matroid(&Group::trivial(3), 10).unwrap();
        assert_eq!(m.bases, vec![Vec::<usize>::new()]);
        assert_eq!(verify_base_exchange(&m), ExchangeCheck::Holds);
    }
}
