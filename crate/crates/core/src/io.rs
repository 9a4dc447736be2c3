//! Group files and certificate persistence.
//!
//! A group file starts with a `degree N` line; every further non-empty line
//! is one generator in cycle notation. `#` starts a comment.
//!
//! ```text
//! # S4
//! degree 4
//! (1 2)
//! (1 2 3 4)
//! ```

use std::fs;
use std::path::Path;

use crate::certificate::{IbisCertificate, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses group-file text; `origin` names the source in error messages.
pub fn parse_group(text: &str, origin: &Path) -> Result<Group> {
    let err = |line: usize, message: String| Error::FileFormat {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .map(str::trim)
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| err(line_no, format!("expected `degree N`, found `{line}`")))?;
                degree = Some(n);
            }
            Some(n) => {
                let g = Permutation::parse_cycles(line, n).map_err(|e| err(line_no, e.to_string()))?;
                gens.push(g);
            }
        }
    }
    let n = degree.ok_or_else(|| err(1, "missing `degree N` line".into()))?;
    Group::new(n, gens)
}

pub fn read_group_file(path: impl AsRef<Path>) -> Result<Group> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_group(&text, path)
}

/// Canonical text: the degree line, then one generator per line.
pub fn format_group(group: &Group) -> String {
    let mut s = format!("degree {}\n", group.degree());
    for g in group.generators() {
        s.push_str(&g.format_cycles());
        s.push('\n');
    }
    s
}

pub fn write_group_file(path: impl AsRef<Path>, group: &Group) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_group(group)).map_err(io_err(path))
}

/// Pretty JSON with a trailing newline; saving a loaded certificate reproduces the file byte for byte.
pub fn certificate_to_json(cert: &IbisCertificate) -> String {
    let mut s = serde_json::to_string_pretty(cert).expect("certificate serializes");
    s.push('\n');
    s
}

pub fn certificate_from_json(text: &str) -> Result<IbisCertificate> {
    #[derive(serde::Deserialize)]
    struct Version {
        schema_version: u32,
    }
    let v: Version = serde_json::from_str(text)?;
    if v.schema_version != SCHEMA_VERSION {
        return Err(Error::SchemaVersion {
            found: v.schema_version,
            expected: SCHEMA_VERSION,
        });
    }
    Ok(serde_json::from_str(text)?)
}

pub fn save_certificate(cert: &IbisCertificate, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, certificate_to_json(cert)).map_err(io_err(path))
}

pub fn load_certificate(path: impl AsRef<Path>) -> Result<IbisCertificate> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    certificate_from_json(&text)
}
