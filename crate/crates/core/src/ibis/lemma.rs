use super::{base_size_with_budget, is_ibis, IbisOptions};
use crate::certificate::{Decision, IbisCertificate};
use crate::error::{Error, Result};
use crate::group::Group;

/// Outcome of checking the prediction that no group with non-abelian socle
/// and base size 2 is IBIS.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaReport {
    /// `b(G) ≠ 2`; `None` when the base size search ran out of budget.
    NotApplicable { b: Option<usize> },
    /// `b(G) = 2` but the caller did not assert a non-abelian socle, so there is no prediction.
    HypothesisNotMet { decision: Decision },
    /// The exhaustive decision agrees: `NOT_IBIS`.
    Confirmed { cert: IbisCertificate },
    /// The exhaustive decision says `IBIS`.
    Contradicted { cert: IbisCertificate },
    Undecided { cert: IbisCertificate },
}

/// The socle is not computed; `nonabelian_socle` is the caller's assertion.
pub fn lemma_b2_spotcheck(g: &Group, nonabelian_socle: bool, opts: &IbisOptions) -> Result<LemmaReport> {
    match base_size_with_budget(g, opts.budget) {
        Ok(2) => {}
        Ok(b) => return Ok(LemmaReport::NotApplicable { b: Some(b) }),
        Err(Error::BudgetExhausted { .. }) => return Ok(LemmaReport::NotApplicable { b: None }),
        Err(e) => return Err(e),
    }
    let cert = is_ibis(g, opts)?;
    Ok(match (nonabelian_socle, cert.decision) {
        (false, decision) => LemmaReport::HypothesisNotMet { decision },
        (true, Decision::NotIbis) => LemmaReport::Confirmed { cert },
        (true, Decision::Ibis) => LemmaReport::Contradicted { cert },
        (true, Decision::Undecided) => LemmaReport::Undecided { cert },
    })
}
