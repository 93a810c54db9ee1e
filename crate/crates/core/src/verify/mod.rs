//! Executable checks of the measure, shadowing, transfer and capacity facts
//! that the entropy bound rests on.
//!
//! Every check returns a [`VerificationReport`] with exact values as
//! rational strings. A failing report always carries a counterexample.

mod capacity;
mod claims;
mod shadow;

pub use capacity::{capacity_claim, verify_capacity_circle};
pub use claims::{
    verify_ball_measure, verify_component_thirds, verify_dyadic_grid,
    verify_translation_equivariance,
};
pub use shadow::{
    min_expansion_p, shadow_many, shadow_orbit, transfer_separated, ShadowResult, TransferResult,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::rational::Rational;
use crate::separated::SeparatedError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("shadowing intersection is empty for p = {p}")]
    EmptyIntersection { p: u64 },
    #[error("no slack: the closest pair is exactly eps = {0} apart")]
    NoSlack(Rational),
    #[error("pair ({0}, {1}) is not separated")]
    NotSeparated(usize, usize),
    #[error("transferred set failed re-certification at pair {0:?}")]
    TransferNotCertified(Option<(usize, usize)>),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Separated(#[from] SeparatedError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    /// `B_n(x, ε) = x + B_n(0, ε)`.
    TranslationEquivariance,
    /// Each component `J` of `B_n(0, 1/6)` keeps a third of its length in
    /// `B_{n+1}(0, 1/6)`.
    ComponentThirds,
    /// `μ(B_n(0, 1/6)) = 3^-n` under `×6^ℓ`.
    BallMeasure,
    /// At most two points of the circle are pairwise more than 1/3 apart.
    CapacityCircle,
    /// The dyadic grid `{i / 2^r}` is `(r, 1/3)`-separated under doubling.
    DyadicGridSeparated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unsupported,
}

pub type Record = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ReportDoc")]
pub struct VerificationReport {
    pub claim_id: ClaimId,
    pub parameters: Record,
    pub verdict: Verdict,
    pub details: Vec<Record>,
    pub counterexample: Option<Record>,
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportDoc {
    claim_id: ClaimId,
    parameters: Record,
    verdict: Verdict,
    details: Vec<Record>,
    counterexample: Option<Record>,
    seed: Option<u64>,
}

impl TryFrom<ReportDoc> for VerificationReport {
    type Error = String;
    fn try_from(d: ReportDoc) -> Result<Self, String> {
        if d.verdict == Verdict::Fail && d.counterexample.is_none() {
            return Err("a failing report must include a counterexample".into());
        }
        Ok(VerificationReport {
            claim_id: d.claim_id,
            parameters: d.parameters,
            verdict: d.verdict,
            details: d.details,
            counterexample: d.counterexample,
            seed: d.seed,
        })
    }
}

impl VerificationReport {
    fn new(claim_id: ClaimId, parameters: Record) -> Self {
        VerificationReport {
            claim_id,
            parameters,
            verdict: Verdict::Pass,
            details: Vec::new(),
            counterexample: None,
            seed: None,
        }
    }

    /// Marks the report failed; the first counterexample recorded is kept.
    fn fail(&mut self, counterexample: Record) {
        self.verdict = Verdict::Fail;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    fn unsupported(claim_id: ClaimId, parameters: Record, reason: &str) -> Self {
        let mut r = Self::new(claim_id, parameters);
        r.verdict = Verdict::Unsupported;
        r.details.push(record([("reason", reason.to_string())]));
        r
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub(crate) fn record<const N: usize>(entries: [(&str, String); N]) -> Record {
    entries
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}
