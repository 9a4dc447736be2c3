//! Permutation-group toolkit for deciding whether a group is IBIS: every
//! irredundant base has the same size.
//!
//! Conventions: points are 0-based in the API and 1-based in every text
//! format; products act left to right (`&a * &b` applies `a` first).

pub mod action;
pub mod catalog;
pub mod certificate;
pub mod error;
pub mod group;
pub mod ibis;
pub mod io;
pub mod perm;
pub mod rng;
pub mod theorem;

pub use action::{coset_action, subset_action, ActionMap, PointLabel, Primitivity};
pub use certificate::{Decision, IbisCertificate, Method, Witness};
pub use error::{Error, Result};
pub use group::{Group, StabChain};
pub use ibis::{is_ibis, IbisOptions, IrredundantTuple};
pub use perm::{Permutation, PointSet};
