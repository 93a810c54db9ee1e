use num::{BigInt, One, Zero};

use super::graph::check_distinct;
use super::{Method, OrbitTable, SeparatedError, SeparatedSetReport, SeparationGraph};
use crate::circle::CirclePoint;
use crate::cliques::max_clique;
use crate::dynamics::{bowen_ball, PLCircleMap};
use crate::rational::{ratio, Rational};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// The grid `{i / size : 0 <= i < size}`.
pub fn grid(size: u64) -> Vec<CirclePoint> {
    (0..size)
        .map(|i| CirclePoint::reduce(&Rational::new(i.into(), size.into())))
        .collect()
}

/// `3^n`.
pub fn exponential_bound(n: usize) -> BigInt {
    num::pow(BigInt::from(3), n)
}

/// Scans candidates in order and keeps each one separated from everything
/// kept so far. Certified by construction; the order fixes the result.
pub fn greedy_max_separated(
    map: &PLCircleMap,
    candidates: &[CirclePoint],
    n: usize,
    eps: &Rational,
) -> Result<SeparatedSetReport, SeparatedError> {
    if n == 0 {
        return Err(SeparatedError::ZeroSteps);
    }
    check_distinct(candidates)?;
    let table = OrbitTable::new(map, candidates, n, eps);
    let mut kept: Vec<usize> = Vec::new();
    for c in 0..candidates.len() {
        if kept.iter().all(|&k| table.least_index(k, c).is_some()) {
            kept.push(c);
        }
    }
    let graph = SeparationGraph::from_table(&table, candidates.to_vec());
    Ok(SeparatedSetReport {
        n,
        eps: eps.clone(),
        points: kept.iter().map(|&i| candidates[i].clone()).collect(),
        size: kept.len(),
        certified: true,
        maximal: false,
        method: Method::Greedy,
        witnesses: graph.witnesses_for(&kept, None),
    })
}

/// Largest separated subset of the graph's vertices (a maximum clique of the
/// "separated" relation), smallest index set among ties.
///
/// When the node budget runs out the error carries the best certified set
/// found, with `maximal = false`.
pub fn max_separated_exact(
    graph: &SeparationGraph,
    node_budget: u64,
) -> Result<SeparatedSetReport, SeparatedError> {
    let report = |subset: &[usize], maximal: bool| SeparatedSetReport {
        n: graph.n(),
        eps: graph.eps().clone(),
        points: subset
            .iter()
            .map(|&i| graph.vertices()[i].clone())
            .collect(),
        size: subset.len(),
        certified: true,
        maximal,
        method: Method::Exact,
        witnesses: graph.witnesses_for(subset, None),
    };
    match max_clique(&graph.adjacency(), node_budget) {
        Ok(best) => Ok(report(&best, true)),
        Err(out) => Err(SeparatedError::BudgetExceeded {
            best: Box::new(report(&out.best, false)),
            nodes: out.nodes,
        }),
    }
}

fn power_of_six(mut p: u64) -> bool {
    if p < 6 {
        return false;
    }
    while p.is_multiple_of(6) {
        p /= 6;
    }
    p == 1
}

/// Upper bound on the size of an (n, 1/3)-separated set of `×p`, `p = 6^ℓ`.
///
/// The Bowen balls of radius 1/6 around the points of such a set are
/// pairwise disjoint and, by translation invariance, all have the measure of
/// the ball around 0. Their number is at most `⌊1 / measure⌋`.
pub fn packing_upper_bound(
    map: &PLCircleMap,
    n: usize,
    eps: &Rational,
) -> Result<BigInt, SeparatedError> {
    if n == 0 {
        return Err(SeparatedError::ZeroSteps);
    }
    let p = map
        .as_times_p()
        .filter(|&p| power_of_six(p))
        .ok_or_else(|| {
            SeparatedError::UnsupportedParameters("the packing bound needs a ×6^ℓ map".into())
        })?;
    if *eps != ratio(1, 3) {
        return Err(SeparatedError::UnsupportedParameters(
            "the packing bound is only exact at eps = 1/3".into(),
        ));
    }
    let f = PLCircleMap::times_p(p).expect("p >= 6");
    let half_eps = eps / Rational::from_integer(2.into());
    let measure = bowen_ball(&f, &CirclePoint::zero(), n, &half_eps)?.measure();
    debug_assert!(!measure.is_zero());
    Ok((Rational::one() / measure).floor().to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separated::build_separation_graph;

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    fn third() -> Rational {
        ratio(1, 3)
    }

    #[test]
    fn greedy_examples() {
        let f2 = PLCircleMap::times_p(2).unwrap();
        let all = greedy_max_separated(&f2, &grid(4), 2, &third()).unwrap();
        assert_eq!(all.size, 4);
        let some = greedy_max_separated(&f2, &[pt(0, 1), pt(1, 8), pt(1, 2)], 2, &third()).unwrap();
        assert_eq!(some.points, vec![pt(0, 1), pt(1, 2)]);
        assert_eq!(some.witnesses.len(), 1);
        let none = greedy_max_separated(&f2, &[], 2, &third()).unwrap();
        assert_eq!(none.size, 0);
        assert!(none.certified);
    }

    #[test]
    fn exact_examples() {
        let f2 = PLCircleMap::times_p(2).unwrap();
        let g = build_separation_graph(&f2, &grid(4), 2, &third()).unwrap();
        let r = max_separated_exact(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.size, 4);
        assert!(r.maximal);
        let g = build_separation_graph(&f2, &grid(4), 1, &third()).unwrap();
        let r = max_separated_exact(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.points, vec![pt(0, 1), pt(1, 2)]);
        let id = PLCircleMap::identity();
        let close: Vec<_> = (0..5).map(|i| pt(i, 100)).collect();
        let g = build_separation_graph(&id, &close, 3, &third()).unwrap();
        assert_eq!(
            max_separated_exact(&g, DEFAULT_NODE_BUDGET).unwrap().size,
            1
        );
    }

    #[test]
    fn exact_respects_budget() {
        let f6 = PLCircleMap::times_p(6).unwrap();
        let g = build_separation_graph(&f6, &grid(72), 2, &third()).unwrap();
        match max_separated_exact(&g, 3) {
            Err(SeparatedError::BudgetExceeded { best, .. }) => {
                assert!(!best.maximal);
                assert!(best.certified);
                assert!(best.size >= 1);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn packing_examples() {
        let f6 = PLCircleMap::times_p(6).unwrap();
        assert_eq!(
            packing_upper_bound(&f6, 2, &third()).unwrap(),
            BigInt::from(9)
        );
        assert_eq!(
            packing_upper_bound(&f6, 1, &third()).unwrap(),
            BigInt::from(3)
        );
        let f36 = PLCircleMap::times_p(36).unwrap();
        assert_eq!(
            packing_upper_bound(&f36, 3, &third()).unwrap(),
            BigInt::from(27)
        );
    }

    #[test]
    fn packing_rejects_other_parameters() {
        let f2 = PLCircleMap::times_p(2).unwrap();
        assert!(matches!(
            packing_upper_bound(&f2, 2, &third()),
            Err(SeparatedError::UnsupportedParameters(_))
        ));
        let f12 = PLCircleMap::times_p(12).unwrap();
        assert!(packing_upper_bound(&f12, 2, &third()).is_err());
        let f6 = PLCircleMap::times_p(6).unwrap();
        assert!(matches!(
            packing_upper_bound(&f6, 2, &ratio(1, 4)),
            Err(SeparatedError::UnsupportedParameters(_))
        ));
    }

    #[test]
    fn grid_search_stays_under_packing_bound() {
        let f6 = PLCircleMap::times_p(6).unwrap();
        for n in 1..=2 {
            let cands = grid(6u64.pow(n as u32) * 2);
            let g = build_separation_graph(&f6, &cands, n, &third()).unwrap();
            let exact = max_separated_exact(&g, DEFAULT_NODE_BUDGET).unwrap();
            let greedy = greedy_max_separated(&f6, &cands, n, &third()).unwrap();
            let bound = packing_upper_bound(&f6, n, &third()).unwrap();
            assert!(greedy.size <= exact.size);
            assert!(BigInt::from(exact.size) <= bound);
            assert_eq!(exact.exponential_bound_holds(), Some(true));
        }
    }
}
