use std::collections::HashSet;

use rayon::prelude::*;

use super::{Method, OrbitTable, SeparatedError, SeparatedSetReport, Witness};
use crate::circle::CirclePoint;
use crate::cliques::BitGraph;
use crate::dynamics::PLCircleMap;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairStatus {
    NotSeparated,
    Separated { index: usize, witness: Rational },
}

impl PairStatus {
    pub fn index(&self) -> Option<usize> {
        match self {
            PairStatus::NotSeparated => None,
            PairStatus::Separated { index, .. } => Some(*index),
        }
    }
}

/// The least `i < n` with `d(f^i x, f^i y) > eps`, if any.
pub fn least_sep_index(
    map: &PLCircleMap,
    x: &CirclePoint,
    y: &CirclePoint,
    n: usize,
    eps: &Rational,
) -> Result<Option<usize>, SeparatedError> {
    if x == y {
        return Err(SeparatedError::SamePoint(x.clone()));
    }
    if n == 0 {
        return Err(SeparatedError::ZeroSteps);
    }
    let table = OrbitTable::new(map, &[x.clone(), y.clone()], n, eps);
    Ok(table.least_index(0, 1))
}

pub(crate) fn check_distinct(points: &[CirclePoint]) -> Result<(), SeparatedError> {
    let mut seen = HashSet::with_capacity(points.len());
    for p in points {
        if !seen.insert(p) {
            return Err(SeparatedError::DuplicatePoint(p.clone()));
        }
    }
    Ok(())
}

fn pair_offset(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// Every unordered pair of a point list, tagged with its least separating
/// index and the distance there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationGraph {
    vertices: Vec<CirclePoint>,
    n: usize,
    eps: Rational,
    // upper triangle, row-major
    edges: Vec<PairStatus>,
}

pub fn build_separation_graph(
    map: &PLCircleMap,
    points: &[CirclePoint],
    n: usize,
    eps: &Rational,
) -> Result<SeparationGraph, SeparatedError> {
    if n == 0 {
        return Err(SeparatedError::ZeroSteps);
    }
    check_distinct(points)?;
    let table = OrbitTable::new(map, points, n, eps);
    Ok(SeparationGraph::from_table(&table, points.to_vec()))
}

impl SeparationGraph {
    pub(crate) fn from_table(table: &OrbitTable, vertices: Vec<CirclePoint>) -> Self {
        let m = table.len();
        let edges = (0..m)
            .into_par_iter()
            .flat_map_iter(|i| {
                (i + 1..m).map(move |j| match table.least_index(i, j) {
                    Some(index) => PairStatus::Separated {
                        index,
                        witness: table.dist_at(i, j, index),
                    },
                    None => PairStatus::NotSeparated,
                })
            })
            .collect();
        SeparationGraph {
            vertices,
            n: table.n(),
            eps: table.eps().clone(),
            edges,
        }
    }

    pub fn vertices(&self) -> &[CirclePoint] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    /// Status of the pair `{i, j}`, `i != j`.
    pub fn edge(&self, i: usize, j: usize) -> &PairStatus {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        &self.edges[pair_offset(self.vertices.len(), a, b)]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &PairStatus)> + '_ {
        let m = self.vertices.len();
        (0..m)
            .flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
            .zip(&self.edges)
            .map(|((i, j), s)| (i, j, s))
    }

    pub fn is_complete(&self) -> bool {
        self.edges.iter().all(|e| e.index().is_some())
    }

    /// The "separated" relation as a bitset graph.
    pub fn adjacency(&self) -> BitGraph {
        let mut g = BitGraph::new(self.vertices.len());
        for (i, j, s) in self.pairs() {
            if s.index().is_some() {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Witness rows for the induced subgraph on `subset` (indices into this
    /// graph), renumbered `0..subset.len()`.
    pub(crate) fn witnesses_for(
        &self,
        subset: &[usize],
        table: Option<&OrbitTable>,
    ) -> Vec<Witness> {
        let mut rows = Vec::new();
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate().skip(a + 1) {
                let row = match self.edge(i, j) {
                    PairStatus::Separated { index, witness } => {
                        Witness(a, b, Some(*index), witness.clone())
                    }
                    PairStatus::NotSeparated => {
                        let dist = table
                            .map(|t| t.bowen_dist(i, j))
                            .expect("unseparated pairs need the orbit table");
                        Witness(a, b, None, dist)
                    }
                };
                rows.push(row);
            }
        }
        rows
    }
}

/// Full certificate with a witness row for every pair.
pub fn is_separated(
    map: &PLCircleMap,
    points: &[CirclePoint],
    n: usize,
    eps: &Rational,
) -> Result<SeparatedSetReport, SeparatedError> {
    if n == 0 {
        return Err(SeparatedError::ZeroSteps);
    }
    check_distinct(points)?;
    let table = OrbitTable::new(map, points, n, eps);
    let graph = SeparationGraph::from_table(&table, points.to_vec());
    let all: Vec<usize> = (0..points.len()).collect();
    Ok(SeparatedSetReport {
        n,
        eps: eps.clone(),
        points: points.to_vec(),
        size: points.len(),
        certified: graph.is_complete(),
        maximal: false,
        method: Method::External,
        witnesses: graph.witnesses_for(&all, Some(&table)),
    })
}

/// Aggregate outcome of checking every pair, without a witness table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationSummary {
    pub size: usize,
    pub pairs: u64,
    pub certified: bool,
    /// Lexicographically first unseparated pair.
    pub first_failure: Option<(usize, usize)>,
    pub max_index: Option<usize>,
    /// Smallest and largest witness distance over separated pairs.
    pub min_witness: Option<Rational>,
    pub max_witness: Option<Rational>,
}

/// Checks every pair in parallel, keeping only aggregates. Suited to sets
/// too large for a per-pair table (tens of thousands of points).
pub fn certify_separated(
    map: &PLCircleMap,
    points: &[CirclePoint],
    n: usize,
    eps: &Rational,
) -> Result<SeparationSummary, SeparatedError> {
    if n == 0 {
        return Err(SeparatedError::ZeroSteps);
    }
    check_distinct(points)?;
    let table = OrbitTable::new(map, points, n, eps);
    let m = points.len();

    #[derive(Clone)]
    struct Acc {
        failure: Option<(usize, usize)>,
        max_index: Option<usize>,
        // pair and index realising the extreme witnesses
        min_w: Option<(usize, usize, usize)>,
        max_w: Option<(usize, usize, usize)>,
    }
    let empty = Acc {
        failure: None,
        max_index: None,
        min_w: None,
        max_w: None,
    };
    let pick = |a: Option<(usize, usize, usize)>,
                b: Option<(usize, usize, usize)>,
                want_min: bool| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if table.cmp_dist_at(a, b).is_le() == want_min {
                Some(a)
            } else {
                Some(b)
            }
        }
    };
    let merge = |a: Acc, b: Acc| Acc {
        failure: match (a.failure, b.failure) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        },
        max_index: a.max_index.max(b.max_index),
        min_w: pick(a.min_w, b.min_w, true),
        max_w: pick(a.max_w, b.max_w, false),
    };
    let acc = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut acc = empty.clone();
            for j in i + 1..m {
                match table.least_index(i, j) {
                    None => {
                        acc.failure = acc.failure.or(Some((i, j)));
                    }
                    Some(k) => {
                        acc.max_index = acc.max_index.max(Some(k));
                        acc.min_w = pick(acc.min_w, Some((i, j, k)), true);
                        acc.max_w = pick(acc.max_w, Some((i, j, k)), false);
                    }
                }
            }
            acc
        })
        .reduce(|| empty.clone(), merge);
    Ok(SeparationSummary {
        size: m,
        pairs: (m as u64) * (m as u64).saturating_sub(1) / 2,
        certified: acc.failure.is_none(),
        first_failure: acc.failure,
        max_index: acc.max_index,
        min_witness: acc.min_w.map(|(i, j, k)| table.dist_at(i, j, k)),
        max_witness: acc.max_w.map(|(i, j, k)| table.dist_at(i, j, k)),
    })
}
