//! Induced actions: on the right cosets of a subgroup and on k-subsets.
//!
//! An [`ActionMap`] keeps the source group, the image of each source
//! generator (index-aligned), and a label for every target point.
//!
//! Exported actions are a group file for the image plus a sidecar
//! `<file>.labels`, one line per target point:
//!
//! ```text
//! 1	id
//! 2	g1
//! 3	g1*g2
//! ```
//!
//! Coset labels are generator words (`gi` is source generator `i`, 1-based,
//! applied left to right) for the representative reached first in
//! breadth-first order; subset labels list the subset's points, e.g. `{1,4}`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fs;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Group, StabChain};
use crate::io::write_group_file;
use crate::perm::{Permutation, PointSet};
use crate::rng::seeded;

pub const DEFAULT_INDEX_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLabel {
    /// Generator indices (0-based) whose product is the coset representative.
    Coset(Vec<usize>),
    /// 0-based points of the subset, increasing.
    Subset(Vec<usize>),
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Coset(w) if w.is_empty() => f.write_str("id"),
            PointLabel::Coset(w) => {
                let parts: Vec<String> = w.iter().map(|i| format!("g{}", i + 1)).collect();
                f.write_str(&parts.join("*"))
            }
            PointLabel::Subset(s) => {
                let parts: Vec<String> = s.iter().map(|p| (p + 1).to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Cosets {
        subgroup: Group,
        reps: Vec<Permutation>,
        index: HashMap<Box<[u32]>, u32>,
    },
    Subsets {
        k: usize,
        binom: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug)]
pub struct ActionMap {
    source: Group,
    generator_images: Vec<Permutation>,
    image: Group,
    labels: Vec<PointLabel>,
    kind: Kind,
}

impl ActionMap {
    pub fn source(&self) -> &Group {
        &self.source
    }

    /// The group generated by the generator images.
    pub fn image(&self) -> &Group {
        &self.image
    }

    pub fn target_degree(&self) -> usize {
        self.labels.len()
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    pub fn labels(&self) -> &[PointLabel] {
        &self.labels
    }

    /// The image of an element of the source group.
    pub fn image_of(&self, x: &Permutation) -> Result<Permutation> {
        if !self.source.contains(x)? {
            return Err(Error::Invalid("element is not in the source group".into()));
        }
        let images = match &self.kind {
            Kind::Cosets { subgroup, reps, index } => reps
                .iter()
                .map(|r| index[&coset_key(subgroup.chain(), &(r * x))])
                .collect(),
            Kind::Subsets { k, binom } => {
                let mut scratch = Vec::with_capacity(*k);
                self.labels
                    .iter()
                    .map(|l| {
                        let PointLabel::Subset(s) = l else { unreachable!() };
                        subset_image(s, x, binom, &mut scratch) as u32
                    })
                    .collect()
            }
        };
        Ok(Permutation::from_images_unchecked(images))
    }

    pub fn is_transitive(&self) -> bool {
        self.image.is_transitive()
    }

    pub fn is_primitive(&self) -> Primitivity {
        primitivity(&self.image)
    }

    /// Whether the kernel is trivial, by comparing orders.
    pub fn is_faithful(&self) -> bool {
        self.source.order() == self.image.order()
    }

    /// Checks `image(w) = w(images)` on `samples` random generator words.
    pub fn check_homomorphism(&self, samples: usize, seed: u64) -> Result<bool> {
        let gens = self.source.generators();
        if gens.is_empty() {
            return Ok(true);
        }
        let mut rng = seeded(seed);
        for _ in 0..samples {
            let len = rng.gen_range(1..=12);
            let mut word = Permutation::identity(self.source.degree());
            let mut image = Permutation::identity(self.target_degree());
            for _ in 0..len {
                let i = rng.gen_range(0..gens.len());
                word = &word * &gens[i];
                image = &image * &self.generator_images()[i];
            }
            if self.image_of(&word)? != image {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Writes the image as a group file and the labels to `<path>.labels`.
    pub fn export(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        write_group_file(path, &self.image)?;
        let mut sidecar = path.as_os_str().to_owned();
        sidecar.push(".labels");
        let text: String = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{}\t{l}\n", i + 1))
            .collect();
        fs::write(&sidecar, text).map_err(|source| Error::Io {
            path: sidecar.into(),
            source,
        })
    }
}

/// The canonical element of the right coset `Hx`: at each level of `H`'s
/// chain, left-multiply by the transversal element that minimizes the image
/// of the base point. The result depends only on the coset.
fn coset_key(h: &StabChain, x: &Permutation) -> Box<[u32]> {
    let mut y = x.clone();
    for level in h.levels() {
        let best = *level
            .orbit()
            .iter()
            .min_by_key(|&&d| y.apply(d))
            .expect("orbit contains the base point");
        if best != level.base_point() {
            let u = level.transversal(best).expect("best is in the orbit");
            y = &u * &y;
        }
    }
    y.into_images().into_boxed_slice()
}

/// The action of `g` on the right cosets of `h`, with `H` itself as point 1.
pub fn coset_action(g: &Group, h: &Group, index_cap: u128) -> Result<ActionMap> {
    if g.degree() != h.degree() {
        return Err(Error::Invalid(format!(
            "subgroup has degree {}, group has degree {}",
            h.degree(),
            g.degree()
        )));
    }
    for (i, x) in h.generators().iter().enumerate() {
        if !g.contains(x)? {
            return Err(Error::NotSubgroup { index: i });
        }
    }
    let index = g.order() / h.order();
    if index > index_cap {
        return Err(Error::CapExceeded { size: index, cap: index_cap });
    }
    let chain = h.chain();
    let gens = g.generators();
    let mut reps = vec![Permutation::identity(g.degree())];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut lookup: HashMap<Box<[u32]>, u32> = HashMap::new();
    lookup.insert(coset_key(chain, &reps[0]), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::with_capacity(index as usize); gens.len()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (j, s) in gens.iter().enumerate() {
            let y = &reps[i] * s;
            let key = coset_key(chain, &y);
            let next = lookup.len() as u32;
            let target = *lookup.entry(key).or_insert_with(|| {
                let mut w = words[i].clone();
                w.push(j);
                words.push(w);
                reps.push(y);
                queue.push_back(next as usize);
                next
            });
            images[j].push(target);
        }
    }
    debug_assert_eq!(reps.len() as u128, index);
    let image_gens: Vec<Permutation> = images.into_iter().map(Permutation::from_images_unchecked).collect();
    Ok(ActionMap {
        source: g.clone(),
        image: Group::new(reps.len(), image_gens.clone())?,
        generator_images: image_gens,
        labels: words.into_iter().map(PointLabel::Coset).collect(),
        kind: Kind::Cosets {
            subgroup: h.clone(),
            reps,
            index: lookup,
        },
    })
}

fn binomial_table(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut c = vec![vec![0usize; k + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=k.min(i) {
            c[i][j] = c[i - 1][j - 1] + if j < i { c[i - 1][j] } else { 0 };
        }
    }
    c
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Colexicographic rank of an increasing subset.
fn colex_rank(s: &[usize], binom: &[Vec<usize>]) -> usize {
    s.iter().enumerate().map(|(i, &a)| binom[a][i + 1]).sum()
}

fn subset_image(s: &[usize], x: &Permutation, binom: &[Vec<usize>], scratch: &mut Vec<usize>) -> usize {
    scratch.clear();
    scratch.extend(s.iter().map(|&p| x.apply(p)));
    scratch.sort_unstable();
    colex_rank(scratch, binom)
}

/// The action of `g` on `k`-subsets of its points, in colexicographic order.
pub fn subset_action(g: &Group, k: usize, cap: u128) -> Result<ActionMap> {
    let n = g.degree();
    if k == 0 || k > n {
        return Err(Error::Invalid(format!("subset size {k} must be between 1 and the degree {n}")));
    }
    let size = binomial(n, k);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let binom = binomial_table(n, k);
    let mut subsets = Vec::with_capacity(size as usize);
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        subsets.push(s.clone());
        // colex successor: bump the first entry that has room, reset the ones below it
        let Some(j) = (0..k).find(|&j| s[j] + 1 < if j + 1 < k { s[j + 1] } else { n }) else {
            break;
        };
        s[j] += 1;
        for (i, v) in s.iter_mut().enumerate().take(j) {
            *v = i;
        }
    }
    let mut scratch = Vec::with_capacity(k);
    let image_gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| {
            let images = subsets
                .iter()
                .map(|s| subset_image(s, x, &binom, &mut scratch) as u32)
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    Ok(ActionMap {
        source: g.clone(),
        image: Group::new(subsets.len(), image_gens.clone())?,
        generator_images: image_gens,
        labels: subsets.into_iter().map(PointLabel::Subset).collect(),
        kind: Kind::Subsets { k, binom },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Intransitive,
    Primitive,
    /// A block of imprimitivity with more than one point and fewer than all.
    Imprimitive { block: PointSet },
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The smallest block of `g` containing points `a` and `b`, by union-find
/// closure of `{a, b}` under the generators.
pub fn minimal_block(g: &Group, a: usize, b: usize) -> PointSet {
    let n = g.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    if ra != rb {
        parent[rb] = ra;
        queue.push_back((a, b));
    }
    while let Some((x, y)) = queue.pop_front() {
        for s in g.generators() {
            let (sx, sy) = (s.apply(x), s.apply(y));
            let (rx, ry) = (find(&mut parent, sx), find(&mut parent, sy));
            if rx != ry {
                parent[ry] = rx;
                queue.push_back((sx, sy));
            }
        }
    }
    let root = find(&mut parent, a);
    PointSet::new(n, (0..n).filter(|&p| find(&mut parent, p) == root))
}

/// Decides primitivity: a transitive group is primitive iff the minimal block
/// containing point 1 and `γ` is everything, for one `γ` per orbit of the
/// stabilizer of point 1 on the remaining points.
pub fn primitivity(g: &Group) -> Primitivity {
    let n = g.degree();
    if !g.is_transitive() {
        return Primitivity::Intransitive;
    }
    if n <= 2 {
        return Primitivity::Primitive;
    }
    let stab = g.point_stabilizer(0).expect("point 1 exists");
    for orbit in stab.orbits() {
        let gamma = orbit[0];
        if gamma == 0 {
            continue;
        }
        let block = minimal_block(g, 0, gamma);
        if block.len() < n {
            return Primitivity::Imprimitive { block };
        }
    }
    Primitivity::Primitive
}
