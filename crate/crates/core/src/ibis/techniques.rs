//! Randomized searches for non-IBIS witnesses.
//!
//! None of these can show a group is IBIS; a `None` result proves nothing.
//! Each run is fixed by its seed, so a witness replays from the seed alone.

use rand::Rng;

use super::{extend_to_base, IrredundantTuple};
use crate::action::ActionMap;
use crate::certificate::{Decision, IbisCertificate, Method, Witness};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::rng::seeded;

/// Consecutive rejected draws after which the conjugate-chain search restarts.
const T2_RESTART_AFTER: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSearch {
    /// Irredundant, of the target length, with nontrivial final stabilizer.
    pub tuple: IrredundantTuple,
    /// Points drawn before success.
    pub iterations: u64,
    pub seed: u64,
}

/// Draws uniform points, keeping a point iff it is moved by the stabilizer of
/// the points kept so far. A dead end (trivial stabilizer) restarts from scratch.
fn random_prefix(g: &Group, target: usize, seed: u64, max_iters: u64) -> Result<Option<RandomSearch>> {
    if target == 0 || g.order() == 1 {
        return Ok(None);
    }
    let mut rng = seeded(seed);
    let n = g.degree();
    let mut points = Vec::with_capacity(target);
    let mut orders = vec![g.order()];
    let mut stab = g.clone();
    for iter in 1..=max_iters {
        let p = rng.gen_range(0..n);
        if !stab.moves(p) {
            continue;
        }
        let orbit = stab.orbit_transversal(p)?.len() as u128;
        let order = orders.last().expect("root order") / orbit;
        if order == 1 {
            points.clear();
            orders.truncate(1);
            stab = g.clone();
            continue;
        }
        points.push(p);
        orders.push(order);
        if points.len() == target {
            return Ok(Some(RandomSearch {
                tuple: IrredundantTuple::from_parts(points, orders),
                iterations: iter,
                seed,
            }));
        }
        stab = stab.point_stabilizer(p)?;
    }
    Ok(None)
}

/// Random search for an irredundant `target`-tuple with nontrivial final
/// stabilizer. With `target = b(G)` a hit shows `G` is not IBIS.
pub fn t1_random_search(g: &Group, target: usize, seed: u64, max_iters: u64) -> Option<RandomSearch> {
    random_prefix(g, target, seed, max_iters).expect("points drawn in range")
}

impl RandomSearch {
    /// Extends the tuple to a full base of `g`. The certificate says
    /// `NOT_IBIS` when that base's length differs from `b`, else `UNDECIDED`.
    pub fn certificate(&self, g: &Group, label: &str, b: Option<usize>) -> Result<IbisCertificate> {
        let full = extend_to_base(g, &self.tuple)?;
        Ok(base_certificate(g, label, b, &full, Method::T1, self.seed))
    }
}

fn base_certificate(
    g: &Group,
    label: &str,
    b: Option<usize>,
    full: &IrredundantTuple,
    method: Method,
    seed: u64,
) -> IbisCertificate {
    let mut cert = IbisCertificate::new(label, g, b);
    cert.method = method;
    cert.seed = Some(seed);
    cert.witness = Some(Witness::from_tuple(full));
    if b.is_some_and(|b| b != full.len()) {
        cert.decision = Decision::NotIbis;
    }
    cert
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateChain {
    /// `x₁,…,x_k` with distinct cosets `Hxᵢ`.
    pub elements: Vec<Permutation>,
    /// `|G|, |H^{x₁}|, |H^{x₁} ∩ H^{x₂}|, …`, strictly decreasing, last one above 1.
    pub orders: Vec<u128>,
    pub iterations: u64,
}

impl ConjugateChain {
    /// Translates the chain into points of `action`, the action on cosets of
    /// `H`: `xᵢ` becomes the point `Hxᵢ`. The witness is that tuple extended
    /// to a full base of the image and also records the elements.
    pub fn certificate(
        &self,
        action: &ActionMap,
        label: &str,
        b: Option<usize>,
        seed: u64,
    ) -> Result<IbisCertificate> {
        let image = action.image();
        let mut points = Vec::with_capacity(self.elements.len());
        for x in &self.elements {
            points.push(action.image_of(x)?.apply(0));
        }
        let tuple = IrredundantTuple::compute(image, &points)?;
        let full = extend_to_base(image, &tuple)?;
        let mut cert = base_certificate(image, label, b, &full, Method::T2, seed);
        if let Some(w) = cert.witness.as_mut() {
            w.elements = self.elements.iter().map(Permutation::format_cycles).collect();
        }
        Ok(cert)
    }
}

fn same_coset(h: &Group, x: &Permutation, y: &Permutation) -> Result<bool> {
    h.contains(&(x * &y.inverse()))
}

/// Searches for `x₁,…,x_len` such that the intersections `H^{x₁} ∩ … ∩ H^{xᵢ}`
/// strictly decrease and stay nontrivial. These are the point stabilizers
/// along `(Hx₁,…,Hx_len)` in the action on cosets of `H`, so a hit is an
/// irredundant tuple there with nontrivial stabilizer.
pub fn t2_conjugate_chain(
    g: &Group,
    h: &Group,
    len: usize,
    seed: u64,
    max_iters: u64,
    budget: u64,
) -> Result<Option<ConjugateChain>> {
    if !g.contains_group(h)? {
        return Err(Error::NotSubgroup {
            index: first_outside(g, h)?,
        });
    }
    if len == 0 {
        return Ok((h.order() > 1).then(|| ConjugateChain {
            elements: Vec::new(),
            orders: vec![g.order()],
            iterations: 0,
        }));
    }
    let mut rng = seeded(seed);
    let mut elements: Vec<Permutation> = Vec::new();
    let mut orders = vec![g.order()];
    let mut current = g.clone();
    let mut failures = 0;
    for iter in 1..=max_iters {
        let x = g.random_element(&mut rng);
        let mut accepted = false;
        let mut distinct = true;
        for y in &elements {
            if same_coset(h, &x, y)? {
                distinct = false;
                break;
            }
        }
        if distinct {
            let next = current.intersect(&h.conjugate(&x)?, budget)?;
            let prev = *orders.last().expect("root order");
            if next.order() < prev && next.order() > 1 {
                orders.push(next.order());
                elements.push(x);
                current = next;
                accepted = true;
            }
        }
        if accepted {
            failures = 0;
            if elements.len() == len {
                return Ok(Some(ConjugateChain {
                    elements,
                    orders,
                    iterations: iter,
                }));
            }
        } else {
            failures += 1;
            if failures >= T2_RESTART_AFTER {
                failures = 0;
                elements.clear();
                orders.truncate(1);
                current = g.clone();
            }
        }
    }
    Ok(None)
}

fn first_outside(g: &Group, h: &Group) -> Result<usize> {
    for (i, x) in h.generators().iter().enumerate() {
        if !g.contains(x)? {
            return Ok(i);
        }
    }
    Ok(0)
}

/// Recomputes a conjugate chain from its elements and checks every condition.
pub fn verify_t2_chain(g: &Group, h: &Group, elements: &[Permutation], orders: &[u128], budget: u64) -> Result<bool> {
    if !g.contains_group(h)? || orders.len() != elements.len() + 1 || orders.first() != Some(&g.order()) {
        return Ok(false);
    }
    for (i, x) in elements.iter().enumerate() {
        if !g.contains(x)? {
            return Ok(false);
        }
        for y in &elements[..i] {
            if same_coset(h, x, y)? {
                return Ok(false);
            }
        }
    }
    let mut current = g.clone();
    for (x, w) in elements.iter().zip(orders.windows(2)) {
        current = current.intersect(&h.conjugate(x)?, budget)?;
        if current.order() != w[1] || w[1] >= w[0] {
            return Ok(false);
        }
    }
    Ok(*orders.last().expect("non-empty") > 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedSearch {
    /// A full irredundant base of `K` extending the random `target`-tuple.
    pub k_tuple: IrredundantTuple,
    /// The same points' chain in `G`, extended to a full irredundant base of `G`.
    pub g_tuple: IrredundantTuple,
    pub iterations: u64,
    pub seed: u64,
}

impl RestrictedSearch {
    pub fn certificate(&self, g: &Group, label: &str, b: Option<usize>) -> Result<IbisCertificate> {
        Ok(base_certificate(g, label, b, &self.g_tuple, Method::T3, self.seed))
    }
}

/// Runs the random search inside `K ≤ G` and lifts the result to `G`.
///
/// An element of `K` fixing `b₁…bᵢ` and moving `bᵢ₊₁` lies in `G` too, so a
/// `K`-irredundant tuple is `G`-irredundant. A `K`-base longer than `target`
/// therefore yields a `G`-irredundant base longer than `target`.
pub fn t3_restricted_search(
    g: &Group,
    k: &Group,
    target: usize,
    seed: u64,
    max_iters: u64,
) -> Result<Option<RestrictedSearch>> {
    if g.degree() != k.degree() {
        return Err(Error::Invalid(format!(
            "subgroup has degree {}, group has degree {}",
            k.degree(),
            g.degree()
        )));
    }
    if !g.contains_group(k)? {
        return Err(Error::NotSubgroup {
            index: first_outside(g, k)?,
        });
    }
    let Some(found) = random_prefix(k, target, seed, max_iters)? else {
        return Ok(None);
    };
    let k_tuple = extend_to_base(k, &found.tuple)?;
    let in_g = IrredundantTuple::compute(g, k_tuple.points())?;
    if !in_g.is_irredundant() {
        return Err(Error::Invalid("restricted tuple is not irredundant in the full group".into()));
    }
    let g_tuple = extend_to_base(g, &in_g)?;
    Ok(Some(RestrictedSearch {
        k_tuple,
        g_tuple,
        iterations: found.iterations,
        seed,
    }))
}
