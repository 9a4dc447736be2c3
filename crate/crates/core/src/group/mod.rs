//! Permutation groups given by generators, with lazily built stabilizer chains.

mod chain;
mod intersect;

use std::sync::OnceLock;

use rand::Rng;

pub use chain::{Level, SchreierVector, StabChain, DEPTH_CAP};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PointSet};

/// A permutation group `⟨generators⟩ ≤ Sym(n)`.
///
/// The stabilizer chain is built on first use with the default base (smallest
/// moved point at each level) and cached; the group is immutable afterwards.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    known_order: Option<u128>,
    chain: OnceLock<StabChain>,
}

impl Group {
    /// Identity generators are dropped; an empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(crate::perm::PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                }
                .into());
            }
        }
        Ok(Self {
            degree,
            generators: generators.into_iter().filter(|g| !g.is_identity()).collect(),
            known_order: None,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_chain(StabChain::build(degree, &[], &[], Some(1)))
    }

    /// Wraps an already verified chain; its first level's strong generators become the generators.
    pub(crate) fn from_chain(chain: StabChain) -> Self {
        Self {
            degree: chain.degree(),
            generators: chain.level_generators(0).to_vec(),
            known_order: Some(chain.order()),
            chain: OnceLock::from(chain),
        }
    }

    /// Generators whose group order is already known; speeds up chain construction.
    pub(crate) fn with_known_order(degree: usize, generators: Vec<Permutation>, order: u128) -> Self {
        Self {
            degree,
            generators: generators.into_iter().filter(|g| !g.is_identity()).collect(),
            known_order: Some(order),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[], self.known_order))
    }

    /// A fresh chain whose base starts with `preferred` (points fixed at their level skipped).
    pub fn chain_with_base(&self, preferred: &[usize]) -> StabChain {
        let order = self.order();
        StabChain::build(self.degree, &self.generators, preferred, Some(order))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(crate::perm::PermError::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            }
            .into());
        }
        Ok(self.chain().contains(g))
    }

    pub(crate) fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// The orbit of a 0-based point.
    pub fn orbit(&self, point: usize) -> Result<PointSet> {
        Ok(PointSet::new(self.degree, self.orbit_transversal(point)?.points().iter().copied()))
    }

    /// The orbit of `point` together with a transversal.
    pub fn orbit_transversal(&self, point: usize) -> Result<Orbit> {
        self.check_point(point)?;
        Ok(Orbit(Level::orbit_of(self.degree, point, &self.generators)))
    }

    /// The orbit partition; each orbit is sorted, orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut id = vec![usize::MAX; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if id[start] != usize::MAX {
                continue;
            }
            let k = out.len();
            id[start] = k;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let p = orbit[i];
                for g in &self.generators {
                    let q = g.apply(p);
                    if id[q] == usize::MAX {
                        id[q] = k;
                        orbit.push(q);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Points fixed by every element.
    pub fn fixed_points(&self) -> PointSet {
        PointSet::new(
            self.degree,
            (0..self.degree).filter(|&p| self.generators.iter().all(|g| !g.moves(p))),
        )
    }

    pub fn moves(&self, point: usize) -> bool {
        self.generators.iter().any(|g| g.moves(point))
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// The stabilizer of a 0-based point.
    pub fn point_stabilizer(&self, point: usize) -> Result<Group> {
        self.tuple_stabilizer(&[point])
    }

    /// The pointwise stabilizer of a sequence of 0-based points.
    pub fn tuple_stabilizer(&self, points: &[usize]) -> Result<Group> {
        for &p in points {
            self.check_point(p)?;
        }
        if points.iter().all(|&p| !self.moves(p)) {
            return Ok(self.clone());
        }
        let chain = self.chain_with_base(points);
        let k = chain
            .levels()
            .iter()
            .take_while(|l| points.contains(&l.base_point()))
            .count();
        Ok(Group::from_chain(chain.tail(k)))
    }

    /// `|G|, |G_{p₁}|, |G_{p₁p₂}|, …` for a sequence of 0-based points, from one chain.
    pub fn stabilizer_orders(&self, points: &[usize]) -> Result<Vec<u128>> {
        for &p in points {
            self.check_point(p)?;
        }
        let chain = self.chain_with_base(points);
        let levels = chain.levels();
        let mut out = Vec::with_capacity(points.len() + 1);
        let mut order = chain.order();
        out.push(order);
        let mut next = 0;
        for &p in points {
            if next < levels.len() && levels[next].base_point() == p {
                order /= levels[next].orbit().len() as u128;
                next += 1;
            }
            out.push(order);
        }
        Ok(out)
    }

    /// `x⁻¹ G x`.
    pub fn conjugate(&self, x: &Permutation) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate(x))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(match self.known_order {
            Some(o) => Group::with_known_order(self.degree, gens, o),
            None if self.chain.get().is_some() => Group::with_known_order(self.degree, gens, self.order()),
            None => Group::new(self.degree, gens)?,
        })
    }

    /// A uniformly distributed element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.chain().levels() {
            let orbit = level.orbit();
            let d = orbit[rng.gen_range(0..orbit.len())];
            let u = level.schreier_vector().transversal(d);
            g = &u * &g;
        }
        g
    }

    /// `self ∩ other` by backtrack search over this group's chain, pruned by
    /// membership in `other`. Fails if more than `budget` search nodes are needed.
    pub fn intersect(&self, other: &Group, budget: u64) -> Result<Group> {
        intersect::intersect(self, other, budget)
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &Group) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An orbit with a Schreier-vector transversal.
#[derive(Clone, Debug)]
pub struct Orbit(Level);

impl Orbit {
    /// Orbit points in discovery order, starting with the root.
    pub fn points(&self) -> &[usize] {
        self.0.orbit()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.0.in_orbit(point)
    }

    /// An element mapping the root to `point`.
    pub fn transversal(&self, point: usize) -> Option<Permutation> {
        self.0.transversal(point)
    }

    pub fn len(&self) -> usize {
        self.points().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
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
    fn orders() {
        assert_eq!(g(3, &["(1 2)", "(1 2 3)"]).order(), 6);
        assert_eq!(g(4, &["(1 2)", "(1 2 3 4)"]).order(), 24);
        assert_eq!(g(5, &[]).order(), 1);
        assert_eq!(g(5, &["()"]).order(), 1);
        assert!(g(5, &["()"]).chain().base().is_empty());
    }

    #[test]
    fn orbit_examples() {
        let c3 = g(4, &["(1 2 3)"]);
        assert_eq!(c3.orbit(0).unwrap().labels(), vec![1, 2, 3]);
        assert_eq!(g(5, &[]).orbit(2).unwrap().labels(), vec![3]);
        assert!(matches!(c3.orbit(4), Err(Error::PointOutOfRange { point: 5, degree: 4 })));
        let o = c3.orbit_transversal(0).unwrap();
        for &d in o.points() {
            assert_eq!(o.transversal(d).unwrap().apply(0), d);
        }
    }

    #[test]
    fn membership() {
        let a4 = g(4, &["(1 2 3)", "(2 3 4)"]);
        assert!(!a4.contains(&Permutation::parse_cycles("(1 2)", 4).unwrap()).unwrap());
        assert!(a4.contains(&Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap()).unwrap());
        assert!(a4.contains(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn stabilizers() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        let st = s3.point_stabilizer(0).unwrap();
        assert_eq!(st.order(), 2);
        assert!(st.contains(&Permutation::parse_cycles("(2 3)", 3).unwrap()).unwrap());
        assert_eq!(s3.tuple_stabilizer(&[]).unwrap().order(), 6);
        assert_eq!(s3.stabilizer_orders(&[0, 1]).unwrap(), vec![6, 2, 1]);
        assert_eq!(s3.stabilizer_orders(&[0, 0, 2]).unwrap(), vec![6, 2, 2, 1]);
        assert!(s3.point_stabilizer(3).is_err());
    }

    #[test]
    fn fixed_points_examples() {
        assert_eq!(g(4, &["(1 2)"]).fixed_points().labels(), vec![3, 4]);
        assert!(g(4, &["(1 2 3 4)"]).fixed_points().is_empty());
        assert_eq!(g(5, &[]).fixed_points().labels(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn random_elements_are_members() {
        use rand::SeedableRng;
        let s5 = g(5, &["(1 2)", "(1 2 3 4 5)"]);
        let a5 = g(5, &["(1 2 3)", "(1 2 3 4 5)"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut odd = 0;
        for _ in 0..200 {
            let x = s5.random_element(&mut rng);
            assert!(s5.contains(&x).unwrap());
            if !a5.contains(&x).unwrap() {
                odd += 1;
            }
        }
        assert!(odd > 60 && odd < 140, "{odd}");
    }
}
