//! Replayable IBIS certificates and their JSON schema.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "group": "catalog:S5 subsets:2",
//!   "degree": 10,
//!   "order": 120,
//!   "b": 3,
//!   "decision": "NOT_IBIS",
//!   "method": "EXHAUSTIVE",
//!   "seed": null,
//!   "witness": { "points": [1, 2, 8, 3], "stab_orders": [120, 12, 4, 2, 1] },
//!   "stats": { "nodes": 7, "reps_examined": 2 }
//! }
//! ```
//!
//! Witness points are 1-based. A `NOT_IBIS` witness is a full irredundant
//! base (final stabilizer order 1) whose length differs from `b`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::Group;
use crate::ibis::IrredundantTuple;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    #[serde(rename = "IBIS")]
    Ibis,
    #[serde(rename = "NOT_IBIS")]
    NotIbis,
    #[serde(rename = "UNDECIDED")]
    Undecided,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Ibis => "IBIS",
            Decision::NotIbis => "NOT_IBIS",
            Decision::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "EXHAUSTIVE")]
    Exhaustive,
    T1,
    T2,
    T3,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "EXHAUSTIVE",
            Method::T1 => "T1",
            Method::T2 => "T2",
            Method::T3 => "T3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// 1-based points.
    pub points: Vec<usize>,
    pub stab_orders: Vec<u128>,
    /// Conjugating elements in cycle notation (conjugate-chain certificates only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
}

impl Witness {
    pub fn from_tuple(t: &IrredundantTuple) -> Self {
        Self {
            points: t.points().iter().map(|p| p + 1).collect(),
            stab_orders: t.stab_orders().to_vec(),
            elements: Vec::new(),
        }
    }

    /// 0-based points.
    pub fn zero_based(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.saturating_sub(1)).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    pub reps_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IbisCertificate {
    pub schema_version: u32,
    pub group: String,
    pub degree: usize,
    pub order: u128,
    pub b: Option<usize>,
    pub decision: Decision,
    pub method: Method,
    pub seed: Option<u64>,
    pub witness: Option<Witness>,
    pub stats: Stats,
}

/// Why a certificate failed to verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    DegreeMismatch,
    OrderMismatch,
    MissingWitness,
    IbisWithoutExhaustiveMethod,
    PointOutOfRange,
    ChainMismatch { recomputed: Vec<u128> },
    NotIrredundant,
    NotFullBase,
    LengthEqualsBaseSize,
}

impl IbisCertificate {
    pub fn new(group: impl Into<String>, g: &Group, b: Option<usize>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            group: group.into(),
            degree: g.degree(),
            order: g.order(),
            b,
            decision: Decision::Undecided,
            method: Method::Exhaustive,
            seed: None,
            witness: None,
            stats: Stats::default(),
        }
    }

    /// Structural rules that hold independently of the group.
    pub fn check_invariants(&self) -> std::result::Result<(), VerifyFailure> {
        match self.decision {
            Decision::NotIbis if self.witness.is_none() => Err(VerifyFailure::MissingWitness),
            Decision::Ibis if self.method != Method::Exhaustive => {
                Err(VerifyFailure::IbisWithoutExhaustiveMethod)
            }
            _ => Ok(()),
        }
    }

    /// Replays the witness against `g`: the recorded stabilizer chain must
    /// recompute exactly from the points, and a `NOT_IBIS` witness must be a
    /// full irredundant base whose length differs from `b`.
    pub fn verify(&self, g: &Group) -> Result<std::result::Result<(), VerifyFailure>> {
        if let Err(e) = self.check_invariants() {
            return Ok(Err(e));
        }
        if g.degree() != self.degree {
            return Ok(Err(VerifyFailure::DegreeMismatch));
        }
        if g.order() != self.order {
            return Ok(Err(VerifyFailure::OrderMismatch));
        }
        let Some(w) = &self.witness else {
            return Ok(Ok(()));
        };
        if w.points.iter().any(|&p| p == 0 || p > g.degree()) {
            return Ok(Err(VerifyFailure::PointOutOfRange));
        }
        let recomputed = g.stabilizer_orders(&w.zero_based())?;
        if recomputed != w.stab_orders {
            return Ok(Err(VerifyFailure::ChainMismatch { recomputed }));
        }
        if w.stab_orders.windows(2).any(|p| p[1] >= p[0]) {
            return Ok(Err(VerifyFailure::NotIrredundant));
        }
        if self.decision == Decision::NotIbis {
            if w.stab_orders.last() != Some(&1) {
                return Ok(Err(VerifyFailure::NotFullBase));
            }
            if Some(w.points.len()) == self.b {
                return Ok(Err(VerifyFailure::LengthEqualsBaseSize));
            }
        }
        Ok(Ok(()))
    }
}
