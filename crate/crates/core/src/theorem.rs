//! The Mathieu classification table: the five natural actions, which are
//! IBIS with known base sizes, and primitive actions on 2-subsets, which are not.

use std::fmt::Write as _;

use serde::Serialize;

use crate::action::{subset_action, DEFAULT_INDEX_CAP};
use crate::catalog::load_catalog;
use crate::certificate::{Decision, IbisCertificate};
use crate::error::Result;
use crate::group::Group;
use crate::ibis::{is_ibis, IbisOptions};

/// Groups whose actions are out of reach at this scale, with their names.
pub const EXCLUDED: [(&str, &str); 5] = [
    ("Ly", "Lyons group"),
    ("J4", "Janko group J4"),
    ("Th", "Thompson group"),
    ("M", "Monster"),
    ("B", "Baby Monster"),
];

#[derive(Clone, Copy, Debug)]
pub struct Expectation {
    pub catalog: &'static str,
    /// `None` for the natural action, `Some(k)` for the action on `k`-subsets.
    pub subsets: Option<usize>,
    pub decision: Decision,
    pub b: Option<usize>,
}

pub const EXPECTATIONS: [Expectation; 8] = [
    Expectation { catalog: "M11", subsets: None, decision: Decision::Ibis, b: Some(4) },
    Expectation { catalog: "M12", subsets: None, decision: Decision::Ibis, b: Some(5) },
    Expectation { catalog: "M22", subsets: None, decision: Decision::Ibis, b: Some(5) },
    Expectation { catalog: "M23", subsets: None, decision: Decision::Ibis, b: Some(6) },
    Expectation { catalog: "M24", subsets: None, decision: Decision::Ibis, b: Some(7) },
    Expectation { catalog: "M11", subsets: Some(2), decision: Decision::NotIbis, b: None },
    Expectation { catalog: "M12", subsets: Some(2), decision: Decision::NotIbis, b: None },
    Expectation { catalog: "M24", subsets: Some(2), decision: Decision::NotIbis, b: None },
];

impl Expectation {
    pub fn label(&self) -> String {
        match self.subsets {
            None => format!("catalog:{} natural", self.catalog),
            Some(k) => format!("catalog:{} subsets:{k}", self.catalog),
        }
    }

    pub fn group(&self) -> Result<Group> {
        let g = load_catalog(self.catalog)?;
        Ok(match self.subsets {
            None => g,
            Some(k) => subset_action(&g, k, DEFAULT_INDEX_CAP)?.image().clone(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremRow {
    pub group: String,
    pub degree: usize,
    pub order: u128,
    pub b: Option<usize>,
    pub decision: Decision,
    pub expected_decision: Decision,
    pub expected_b: Option<usize>,
    pub witness_replays: bool,
    pub pass: bool,
    #[serde(skip)]
    pub certificate: IbisCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub rows: Vec<TheoremRow>,
    pub excluded: Vec<&'static str>,
    pub all_pass: bool,
}

impl TheoremReport {
    pub fn any_undecided(&self) -> bool {
        self.rows.iter().any(|r| r.decision == Decision::Undecided)
    }

    pub fn render_text(&self) -> String {
        let mut t = format!(
            "{:<22} {:>6} {:>10} {:>3}  {:<10} {:<14} result\n",
            "action", "degree", "order", "b", "decision", "expected"
        );
        for r in &self.rows {
            let expected = match r.expected_b {
                Some(b) => format!("{}, b={b}", r.expected_decision),
                None => r.expected_decision.to_string(),
            };
            let _ = writeln!(
                t,
                "{:<22} {:>6} {:>10} {:>3}  {:<10} {:<14} {}",
                r.group.trim_start_matches("catalog:"),
                r.degree,
                r.order,
                r.b.map_or_else(|| "?".to_string(), |b| b.to_string()),
                r.decision.to_string(),
                expected,
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
        let names: Vec<String> = EXCLUDED.iter().map(|(s, n)| format!("{s} ({n})")).collect();
        let _ = writeln!(
            t,
            "\nNot reproduced: {}.\nTheir relevant actions are far too large for this tool, and no result above covers them.",
            names.join(", ")
        );
        t
    }
}

/// Decides every row of [`EXPECTATIONS`] and replays each certificate.
pub fn reproduce_theorem(budget: u64, threads: usize) -> Result<TheoremReport> {
    let mut rows = Vec::new();
    for e in EXPECTATIONS {
        let g = e.group()?;
        let opts = IbisOptions {
            budget,
            threads,
            label: e.label(),
        };
        let cert = is_ibis(&g, &opts)?;
        let witness_replays = cert.verify(&g)?.is_ok();
        let pass = cert.decision == e.decision && e.b.is_none_or(|b| cert.b == Some(b)) && witness_replays;
        rows.push(TheoremRow {
            group: e.label(),
            degree: cert.degree,
            order: cert.order,
            b: cert.b,
            decision: cert.decision,
            expected_decision: e.decision,
            expected_b: e.b,
            witness_replays,
            pass,
            certificate: cert,
        });
    }
    Ok(TheoremReport {
        all_pass: rows.iter().all(|r| r.pass),
        rows,
        excluded: EXCLUDED.iter().map(|e| e.0).collect(),
    })
}
