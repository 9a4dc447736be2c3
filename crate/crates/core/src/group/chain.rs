//! Stabilizer chains built by deterministic Schreier–Sims.
//!
//! Level `i` holds base point `βᵢ`, the strong generators of
//! `G⁽ⁱ⁾ = G_{β₀..βᵢ₋₁}`, and the basic orbit `βᵢ^{G⁽ⁱ⁾}` with a Schreier
//! vector. Schreier vectors are append-only, so a Schreier generator that
//! once sifted to the identity keeps doing so as the chain grows; each
//! `(orbit point, generator)` pair is therefore tested once.
//!
//! When the group order is known in advance (stabilizers of a group whose
//! chain is already built), construction stops as soon as the product of the
//! basic orbit lengths reaches it. The product never exceeds the true order,
//! so reaching it proves completeness.

use std::collections::HashSet;

use crate::perm::Permutation;

/// Schreier-vector paths longer than this get a shortcut label from the root.
pub const DEPTH_CAP: u16 = 12;

const NONE: u32 = u32::MAX;

/// Orbit of a root point with parent pointers labelled by group elements.
#[derive(Clone, Debug)]
pub struct SchreierVector {
    root: usize,
    parent: Vec<u32>,
    label: Vec<u32>,
    depth: Vec<u16>,
    labels: Vec<Permutation>,
    inv_labels: Vec<Permutation>,
}

impl SchreierVector {
    fn new(degree: usize, root: usize) -> Self {
        let mut parent = vec![NONE; degree];
        parent[root] = root as u32;
        Self {
            root,
            parent,
            label: vec![NONE; degree],
            depth: vec![0; degree],
            labels: Vec::new(),
            inv_labels: Vec::new(),
        }
    }

    fn push_label(&mut self, g: Permutation) -> u32 {
        self.inv_labels.push(g.inverse());
        self.labels.push(g);
        (self.labels.len() - 1) as u32
    }

    #[inline]
    pub fn contains(&self, point: usize) -> bool {
        self.parent[point] != NONE
    }

    /// Records `child = parent^g` where `g` is label `lbl`.
    fn attach(&mut self, child: usize, parent: usize, lbl: u32) {
        let depth = self.depth[parent] + 1;
        if depth > DEPTH_CAP {
            let mut u = self.transversal(parent);
            u = &u * &self.labels[lbl as usize];
            let short = self.push_label(u);
            self.parent[child] = self.root as u32;
            self.label[child] = short;
            self.depth[child] = 1;
        } else {
            self.parent[child] = parent as u32;
            self.label[child] = lbl;
            self.depth[child] = depth;
        }
    }

    /// An element mapping the root to `point`.
    pub fn transversal(&self, point: usize) -> Permutation {
        let mut path = Vec::with_capacity(self.depth[point] as usize);
        let mut p = point;
        while p != self.root {
            path.push(self.label[p]);
            p = self.parent[p] as usize;
        }
        let mut u = Permutation::identity(self.parent.len());
        for &l in path.iter().rev() {
            u = &u * &self.labels[l as usize];
        }
        u
    }

    /// Replaces `g` by `g · u_point⁻¹` in place, where `u_point` is the transversal element.
    pub fn divide_in_place(&self, g: &mut [u32], point: usize) {
        let mut p = point;
        while p != self.root {
            let inv = self.inv_labels[self.label[p] as usize].images();
            for x in g.iter_mut() {
                *x = inv[*x as usize];
            }
            p = self.parent[p] as usize;
        }
    }

    /// Image of `point` under `u_from⁻¹`, walking the tree without building permutations.
    pub fn pull_back(&self, from: usize, point: usize) -> usize {
        let mut p = from;
        let mut x = point;
        while p != self.root {
            x = self.inv_labels[self.label[p] as usize].apply(x);
            p = self.parent[p] as usize;
        }
        x
    }
}

#[derive(Clone, Debug)]
pub struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    gen_labels: Vec<u32>,
    orbit: Vec<usize>,
    vector: SchreierVector,
    checked: HashSet<(u32, u32)>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        Self {
            base_point,
            generators: Vec::new(),
            gen_labels: Vec::new(),
            orbit: vec![base_point],
            vector: SchreierVector::new(degree, base_point),
            checked: HashSet::new(),
        }
    }

    pub(crate) fn orbit_of(degree: usize, point: usize, generators: &[Permutation]) -> Self {
        let mut level = Level::new(degree, point);
        for g in generators {
            level.add_generator(g.clone());
        }
        level
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    /// Strong generators of this level's group.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Basic orbit in discovery order, starting with the base point.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn in_orbit(&self, point: usize) -> bool {
        self.vector.contains(point)
    }

    pub fn transversal(&self, point: usize) -> Option<Permutation> {
        self.in_orbit(point).then(|| self.vector.transversal(point))
    }

    pub fn schreier_vector(&self) -> &SchreierVector {
        &self.vector
    }

    fn add_generator(&mut self, g: Permutation) {
        let lbl = self.vector.push_label(g.clone());
        self.generators.push(g);
        self.gen_labels.push(lbl);
        let new_gen = self.generators.len() - 1;
        let old_len = self.orbit.len();
        let mut idx = 0;
        while idx < self.orbit.len() {
            let p = self.orbit[idx];
            let gens = if idx < old_len { new_gen..new_gen + 1 } else { 0..self.generators.len() };
            for k in gens {
                let q = self.generators[k].apply(p);
                if !self.vector.contains(q) {
                    self.vector.attach(q, p, self.gen_labels[k]);
                    self.orbit.push(q);
                }
            }
            idx += 1;
        }
    }
}

/// A base and strong generating set with basic orbits and transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Runs Schreier–Sims. Points of `preferred` come first in the base (those
    /// fixed at their level are dropped); further base points are the smallest
    /// point moved by the element that needs them.
    pub fn build(
        degree: usize,
        generators: &[Permutation],
        preferred: &[usize],
        known_order: Option<u128>,
    ) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let mut seen = vec![false; degree];
        for &p in preferred {
            if !seen[p] {
                seen[p] = true;
                chain.levels.push(Level::new(degree, p));
            }
        }
        for g in &gens {
            if chain.levels.iter().all(|l| !g.moves(l.base_point)) {
                let p = g.smallest_moved_point().expect("non-identity");
                chain.levels.push(Level::new(degree, p));
            }
        }
        for g in &gens {
            for level in chain.levels.iter_mut() {
                level.add_generator(g.clone());
                if g.moves(level.base_point) {
                    break;
                }
            }
        }

        if known_order != Some(chain.order()) {
            chain.schreier_sims(known_order);
        }
        chain.levels.retain(|l| l.orbit.len() > 1);
        for l in chain.levels.iter_mut() {
            l.checked = HashSet::new();
        }
        chain
    }

    fn schreier_sims(&mut self, known_order: Option<u128>) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.find_failing_schreier_generator(i as usize) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let p = h.smallest_moved_point().expect("non-identity residue");
                        self.levels.push(Level::new(self.degree, p));
                    }
                    for l in (i as usize + 1)..=j {
                        self.levels[l].add_generator(h.clone());
                    }
                    if known_order == Some(self.order()) {
                        return;
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// First Schreier generator of `level` that does not sift through the
    /// levels below it, as `(residue, level where sifting stopped)`.
    fn find_failing_schreier_generator(&mut self, level: usize) -> Option<(Permutation, usize)> {
        let n_orbit = self.levels[level].orbit.len();
        let n_gens = self.levels[level].generators.len();
        for oi in 0..n_orbit {
            for k in 0..n_gens {
                let lv = &self.levels[level];
                let delta = lv.orbit[oi];
                if lv.checked.contains(&(delta as u32, k as u32)) {
                    continue;
                }
                let s = &lv.generators[k];
                let image = s.apply(delta);
                let mut imgs = (&lv.vector.transversal(delta) * s).into_images();
                lv.vector.divide_in_place(&mut imgs, image);
                let (residue, stop) = self.sift_from(imgs, level + 1);
                if stop == self.levels.len() && residue.iter().enumerate().all(|(i, &x)| i == x as usize) {
                    self.levels[level].checked.insert((delta as u32, k as u32));
                } else {
                    return Some((Permutation::from_images_unchecked(residue), stop));
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `start..`; returns the residue and the index of
    /// the level whose orbit rejected it (or `levels.len()` if none did).
    fn sift_from(&self, mut g: Vec<u32>, start: usize) -> (Vec<u32>, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let image = g[level.base_point] as usize;
            if !level.vector.contains(image) {
                return (g, i);
            }
            level.vector.divide_in_place(&mut g, image);
        }
        let n = self.levels.len();
        (g, n)
    }

    /// Sifts `g` through the whole chain.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        let (r, i) = self.sift_from(g.images().to_vec(), 0);
        (Permutation::from_images_unchecked(r), i)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (r, i) = self.sift(g);
        i == self.levels.len() && r.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Product of the basic orbit lengths. Panics if it overflows `u128`.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order exceeds u128")
        })
    }

    /// Strong generators of `G⁽ⁱ⁾`; empty for the level past the end.
    pub fn level_generators(&self, i: usize) -> &[Permutation] {
        self.levels.get(i).map_or(&[], |l| l.generators())
    }

    /// The chain of `G⁽ⁱ⁾`.
    pub fn tail(&self, i: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[i.min(self.levels.len())..].to_vec(),
        }
    }

    /// Deterministic check that every Schreier generator of every level sifts to
    /// the identity. Used by tests; construction already guarantees it.
    pub fn verify(&self) -> bool {
        for (i, lv) in self.levels.iter().enumerate() {
            for &delta in &lv.orbit {
                for s in &lv.generators {
                    let mut imgs = (&lv.vector.transversal(delta) * s).into_images();
                    lv.vector.divide_in_place(&mut imgs, s.apply(delta));
                    let (r, stop) = self.sift_from(imgs, i + 1);
                    if stop != self.levels.len() || r.iter().enumerate().any(|(i, &x)| i != x as usize) {
                        return false;
                    }
                }
            }
            if lv.generators.iter().any(|s| {
                self.levels[..i].iter().any(|prev| s.moves(prev.base_point))
            }) {
                return false;
            }
        }
        true
    }
}
