//! (n, ε)-separated sets: pairwise certificates, separation graphs, greedy
//! and exact maximisation over candidate grids, and the packing upper bound
//! for `×6^ℓ` maps.
//!
//! A pair `x ≠ y` is separated when some iterate index `i < n` has
//! `d(f^i x, f^i y) > ε` (strictly). The least such index is the pair's
//! witness; distance exactly `ε` does not count.

mod graph;
mod orbits;
mod search;

pub use graph::{
    build_separation_graph, certify_separated, is_separated, least_sep_index, PairStatus,
    SeparationGraph, SeparationSummary,
};
pub use orbits::OrbitTable;
pub use search::{
    exponential_bound, greedy_max_separated, grid, max_separated_exact, packing_upper_bound,
    DEFAULT_NODE_BUDGET,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circle::CirclePoint;
use crate::dynamics::DynamicsError;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatedError {
    #[error("the two points coincide ({0})")]
    SamePoint(CirclePoint),
    #[error("point {0} is listed more than once")]
    DuplicatePoint(CirclePoint),
    #[error("number of steps must be at least 1")]
    ZeroSteps,
    #[error("search stopped after {nodes} nodes; best set found has {} points", .best.size)]
    BudgetExceeded {
        best: Box<SeparatedSetReport>,
        nodes: u64,
    },
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Greedy,
    Exact,
    External,
}

/// One row of the witness table, serialised as `[i, j, index, "dist"]`.
///
/// For a separated pair `index` is the least separating iterate and `dist`
/// the distance there. For a non-separated pair `index` is `null` and
/// `dist` is the Bowen distance (which is `<= eps`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness(
    pub usize,
    pub usize,
    pub Option<usize>,
    #[serde(with = "crate::rational::serde_str")] pub Rational,
);

/// Evidence about a candidate separated set.
///
/// `maximal` is true only when the set is proven to be of maximum size
/// among the candidates it was drawn from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ReportDoc")]
pub struct SeparatedSetReport {
    pub n: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub eps: Rational,
    pub points: Vec<CirclePoint>,
    pub size: usize,
    pub certified: bool,
    pub maximal: bool,
    pub method: Method,
    pub witnesses: Vec<Witness>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportDoc {
    n: usize,
    #[serde(with = "crate::rational::serde_str")]
    eps: Rational,
    points: Vec<CirclePoint>,
    size: usize,
    certified: bool,
    #[serde(default)]
    maximal: bool,
    method: Method,
    witnesses: Vec<Witness>,
}

impl TryFrom<ReportDoc> for SeparatedSetReport {
    type Error = String;
    fn try_from(d: ReportDoc) -> Result<Self, String> {
        if d.size != d.points.len() {
            return Err(format!(
                "size {} but {} points listed",
                d.size,
                d.points.len()
            ));
        }
        if d.n == 0 {
            return Err("n must be at least 1".into());
        }
        if d.certified && d.witnesses.iter().any(|w| w.2.is_none()) {
            return Err("certified report lists an unseparated pair".into());
        }
        let m = d.points.len();
        if let Some(w) = d.witnesses.iter().find(|w| w.0 >= w.1 || w.1 >= m) {
            return Err(format!("witness pair ({}, {}) is out of range", w.0, w.1));
        }
        Ok(SeparatedSetReport {
            n: d.n,
            eps: d.eps,
            points: d.points,
            size: d.size,
            certified: d.certified,
            maximal: d.maximal,
            method: d.method,
            witnesses: d.witnesses,
        })
    }
}

impl SeparatedSetReport {
    /// Checks `size <= 3^n`, the bound every (n, ε)-separated set of a
    /// continuous circle map obeys once ε >= 1/3. `None` for smaller ε,
    /// where no such bound is claimed.
    pub fn exponential_bound_holds(&self) -> Option<bool> {
        (self.eps >= crate::rational::ratio(1, 3))
            .then(|| num::BigInt::from(self.size) <= exponential_bound(self.n))
    }
}
