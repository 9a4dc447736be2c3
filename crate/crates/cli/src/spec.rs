//! Parsing of group, action, and subgroup specifications.

use std::path::Path;

use ibiskit::action::{coset_action, subset_action, ActionMap};
use ibiskit::catalog::load_catalog;
use ibiskit::io::read_group_file;
use ibiskit::{Error, Group, Permutation};

/// A group after applying the requested action.
pub struct Acted {
    pub source: Group,
    pub action: Option<ActionMap>,
    pub group: Group,
    pub label: String,
}

impl Acted {
    /// Maps a subgroup of the source group into the acted group.
    pub fn map_subgroup(&self, sub: &Group) -> Result<Group, Error> {
        let Some(action) = &self.action else {
            return Ok(sub.clone());
        };
        let gens = sub
            .generators()
            .iter()
            .map(|x| action.image_of(x))
            .collect::<Result<Vec<_>, _>>()?;
        Group::new(action.target_degree(), gens)
    }
}

pub fn usage(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn load_group(spec: &str) -> Result<Group, Error> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        load_catalog(name)
    } else if let Some(path) = spec.strip_prefix("file:") {
        read_group_file(Path::new(path))
    } else {
        Err(usage(format!("group spec must be `catalog:NAME` or `file:PATH`, got `{spec}`")))
    }
}

/// `file:PATH`, `stabilizer:P` (1-based), or `gens:C1;C2;…` in cycle notation, all
/// in the points of `g`.
pub fn load_subgroup(g: &Group, spec: &str) -> Result<Group, Error> {
    let h = if let Some(path) = spec.strip_prefix("file:") {
        read_group_file(Path::new(path))?
    } else if let Some(p) = spec.strip_prefix("stabilizer:") {
        let p: usize = p
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad stabilizer point `{p}`")))?;
        if p == 0 || p > g.degree() {
            return Err(Error::PointOutOfRange { point: p, degree: g.degree() });
        }
        g.point_stabilizer(p - 1)?
    } else if let Some(list) = spec.strip_prefix("gens:") {
        let gens = list
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Permutation::parse_cycles(s, g.degree()))
            .collect::<Result<Vec<_>, _>>()?;
        Group::new(g.degree(), gens)?
    } else {
        return Err(usage(format!(
            "subgroup spec must be `file:PATH`, `stabilizer:P`, or `gens:...`, got `{spec}`"
        )));
    };
    if h.degree() != g.degree() {
        return Err(usage(format!(
            "subgroup has degree {}, group has degree {}",
            h.degree(),
            g.degree()
        )));
    }
    Ok(h)
}

pub fn apply_action(group_spec: &str, action: &str, index_cap: u128) -> Result<Acted, Error> {
    let source = load_group(group_spec)?;
    let label = if action == "natural" {
        group_spec.to_string()
    } else {
        format!("{group_spec} {action}")
    };
    let map = if action == "natural" {
        None
    } else if let Some(k) = action.strip_prefix("subsets:") {
        let k: usize = k.parse().map_err(|_| usage(format!("bad subset size `{k}`")))?;
        Some(subset_action(&source, k, index_cap)?)
    } else if let Some(sub) = action.strip_prefix("cosets:") {
        let h = load_subgroup(&source, sub)?;
        Some(coset_action(&source, &h, index_cap)?)
    } else {
        return Err(usage(format!(
            "action must be `natural`, `subsets:k`, or `cosets:SUBGROUP`, got `{action}`"
        )));
    };
    let group = map.as_ref().map_or_else(|| source.clone(), |a| a.image().clone());
    Ok(Acted {
        source,
        action: map,
        group,
        label,
    })
}
