//! Built-in group catalog and its load-time self-checks.
//!
//! Each entry is a directory holding `generators.grp` (group-file format) and
//! `meta` (`order N`, `transitivity K`, `provenance ...` lines). The entries
//! shipped under `catalog/` are compiled in; setting `IBISKIT_CATALOG_DIR`
//! loads entries from that directory instead. Every load recomputes the
//! order and the transitivity degree and refuses the group on mismatch.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::io::parse_group;

pub const CATALOG_DIR_ENV: &str = "IBISKIT_CATALOG_DIR";

macro_rules! entry {
    ($name:literal) => {
        (
            $name,
            include_str!(concat!("../catalog/", $name, "/generators.grp")),
            include_str!(concat!("../catalog/", $name, "/meta")),
        )
    };
}

static BUILTIN: &[(&str, &str, &str)] = &[
    entry!("A4"),
    entry!("A5"),
    entry!("A6"),
    entry!("A7"),
    entry!("AGL1_7"),
    entry!("AGL3_2"),
    entry!("C5"),
    entry!("D10"),
    entry!("D8"),
    entry!("GL3_2"),
    entry!("L2_11"),
    entry!("L2_5"),
    entry!("L2_7"),
    entry!("M11"),
    entry!("M12"),
    entry!("M22"),
    entry!("M23"),
    entry!("M24"),
    entry!("PGL2_5"),
    entry!("PGL2_7"),
    entry!("S3"),
    entry!("S3wrS2"),
    entry!("S4"),
    entry!("S5"),
    entry!("S6"),
    entry!("S7"),
    entry!("V4"),
];

/// Declared facts about an entry, checked against the computed group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogMeta {
    pub order: u128,
    pub transitivity: usize,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Group,
    pub meta: CatalogMeta,
}

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|e| e.0).collect()
}

/// Names available under the active catalog (override directory or built-in).
pub fn catalog_names() -> Result<Vec<String>> {
    match std::env::var_os(CATALOG_DIR_ENV) {
        Some(dir) => {
            let dir = PathBuf::from(dir);
            let mut names = Vec::new();
            for e in fs::read_dir(&dir).map_err(|source| Error::Io { path: dir.clone(), source })? {
                let e = e.map_err(|source| Error::Io { path: dir.clone(), source })?;
                if e.path().join("generators.grp").is_file() {
                    names.push(e.file_name().to_string_lossy().into_owned());
                }
            }
            names.sort();
            Ok(names)
        }
        None => Ok(builtin_names().into_iter().map(String::from).collect()),
    }
}

fn parse_meta(name: &str, text: &str) -> Result<CatalogMeta> {
    let corrupt = |message: String| Error::CatalogCorrupt {
        name: name.to_string(),
        message,
    };
    let (mut order, mut transitivity, mut provenance) = (None, None, None);
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (key, value) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let value = value.trim();
        match key {
            "order" => order = Some(value.parse::<u128>().map_err(|_| corrupt(format!("bad order `{value}`")))?),
            "transitivity" => {
                transitivity = Some(value.parse::<usize>().map_err(|_| corrupt(format!("bad transitivity `{value}`")))?)
            }
            "provenance" => provenance = Some(value.to_string()),
            _ => return Err(corrupt(format!("unknown meta key `{key}`"))),
        }
    }
    Ok(CatalogMeta {
        order: order.ok_or_else(|| corrupt("meta lacks `order`".into()))?,
        transitivity: transitivity.ok_or_else(|| corrupt("meta lacks `transitivity`".into()))?,
        provenance: provenance.unwrap_or_default(),
    })
}

/// Largest `k` such that the group is transitive on ordered `k`-tuples of distinct points.
///
/// Transitivity on `k`-tuples holds iff the stabilizer of `0..i` is transitive
/// on the remaining `n - i` points for every `i < k`.
pub fn transitivity_degree(group: &Group) -> usize {
    let n = group.degree();
    let points: Vec<usize> = (0..n).collect();
    let orders = group.stabilizer_orders(&points).expect("points in range");
    (0..n)
        .take_while(|&i| orders[i] / orders[i + 1] == (n - i) as u128)
        .count()
}

fn validate(name: &str, group: Group, meta: CatalogMeta) -> Result<CatalogEntry> {
    let order = group.order();
    if order != meta.order {
        return Err(Error::CatalogCorrupt {
            name: name.to_string(),
            message: format!("declared order {} but generators give {order}", meta.order),
        });
    }
    let k = transitivity_degree(&group);
    if k < meta.transitivity {
        return Err(Error::CatalogCorrupt {
            name: name.to_string(),
            message: format!("declared {}-transitive but generators are only {k}-transitive", meta.transitivity),
        });
    }
    Ok(CatalogEntry {
        name: name.to_string(),
        group,
        meta,
    })
}

fn load_from_dir(dir: &Path, name: &str) -> Result<CatalogEntry> {
    let entry_dir = dir.join(name);
    let gens = entry_dir.join("generators.grp");
    if !gens.is_file() {
        return Err(Error::UnknownCatalogEntry(name.to_string()));
    }
    let read = |p: PathBuf| fs::read_to_string(&p).map_err(|source| Error::Io { path: p, source });
    let group = parse_group(&read(gens.clone())?, &gens)?;
    let meta = parse_meta(name, &read(entry_dir.join("meta"))?)?;
    validate(name, group, meta)
}

/// Loads and validates a catalog entry.
pub fn load_entry(name: &str) -> Result<CatalogEntry> {
    if let Some(dir) = std::env::var_os(CATALOG_DIR_ENV) {
        return load_from_dir(Path::new(&dir), name);
    }
    let (_, gens, meta) = BUILTIN
        .iter()
        .find(|e| e.0 == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))?;
    let group = parse_group(gens, &PathBuf::from(format!("catalog/{name}/generators.grp")))?;
    validate(name, group, parse_meta(name, meta)?)
}

pub fn load_catalog(name: &str) -> Result<Group> {
    Ok(load_entry(name)?.group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_entry_validates() {
        for name in builtin_names() {
            let e = load_entry(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(e.group.order(), e.meta.order);
        }
    }

    #[test]
    fn mathieu_orders() {
        let expect = [("M11", 11, 7920u128), ("M12", 12, 95040), ("M22", 22, 443520), ("M23", 23, 10200960), ("M24", 24, 244823040)];
        for (name, n, order) in expect {
            let g = load_catalog(name).unwrap();
            assert_eq!((g.degree(), g.order()), (n, order), "{name}");
        }
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(load_catalog("M13"), Err(Error::UnknownCatalogEntry(_))));
    }

    #[test]
    fn corrupt_entry_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let e = dir.path().join("BAD");
        fs::create_dir(&e).unwrap();
        fs::write(e.join("generators.grp"), "degree 4\n(1 2 3 4)\n").unwrap();
        fs::write(e.join("meta"), "order 24\ntransitivity 1\nprovenance wrong on purpose\n").unwrap();
        assert!(matches!(load_from_dir(dir.path(), "BAD"), Err(Error::CatalogCorrupt { .. })));
        fs::write(e.join("meta"), "order 4\ntransitivity 2\n").unwrap();
        assert!(matches!(load_from_dir(dir.path(), "BAD"), Err(Error::CatalogCorrupt { .. })));
        fs::write(e.join("meta"), "order 4\ntransitivity 1\n").unwrap();
        assert_eq!(load_from_dir(dir.path(), "BAD").unwrap().group.order(), 4);
    }
}
