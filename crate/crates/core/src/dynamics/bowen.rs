use num::{BigInt, Zero};

use super::{DynamicsError, PLCircleMap};
use crate::circle::{circle_dist, open_ball, ArcUnion, CirclePoint};
use crate::rational::{ceil_int, check_digits, floor_int, Rational, DEFAULT_DIGIT_LIMIT};

/// Exact preimage `{x : f(x) in A}` under the default digit guard.
pub fn preimage(map: &PLCircleMap, target: &ArcUnion) -> Result<ArcUnion, DynamicsError> {
    preimage_with_limit(map, target, DEFAULT_DIGIT_LIMIT)
}

/// Exact preimage with an explicit digit guard.
///
/// On each linear piece every boundary point `b` of `target` pulls back to
/// the solutions of `F(x) = b + k`. Together with the breakpoints these
/// cut the circle into gaps on which membership is constant, so sampling
/// one point per gap decides the whole set.
pub fn preimage_with_limit(
    map: &PLCircleMap,
    target: &ArcUnion,
    digit_limit: u64,
) -> Result<ArcUnion, DynamicsError> {
    if target.is_full() || target.is_empty() {
        return Ok(target.clone());
    }
    let mut boundary = target.boundary();
    boundary.sort();
    boundary.dedup();

    let mut cuts = Vec::new();
    for (index, piece) in map.pieces().iter().enumerate() {
        cuts.push(CirclePoint::reduce(&piece.t0));
        if piece.slope.is_zero() {
            let value = CirclePoint::reduce(&piece.v0);
            if target.contains(&value) {
                return Err(DynamicsError::UnsupportedDegenerate {
                    piece: index,
                    value,
                });
            }
            continue;
        }
        let (lo, hi) = if piece.v0 <= piece.v1 {
            (&piece.v0, &piece.v1)
        } else {
            (&piece.v1, &piece.v0)
        };
        for b in &boundary {
            let b = b.value();
            let mut k: BigInt = ceil_int(&(lo - b));
            let k_max: BigInt = floor_int(&(hi - b));
            while k <= k_max {
                let x =
                    &piece.t0 + (b + Rational::from_integer(k.clone()) - &piece.v0) / &piece.slope;
                check_digits(&x, digit_limit)?;
                cuts.push(CirclePoint::reduce(&x));
                k += 1;
            }
        }
    }
    Ok(ArcUnion::from_cuts(cuts, |x| {
        target.contains(&map.apply(x))
    }))
}

/// `max_{i<n} d(f^i x, f^i y)`. Panics if `n == 0`.
pub fn bowen_dist(map: &PLCircleMap, x: &CirclePoint, y: &CirclePoint, n: usize) -> Rational {
    assert!(n >= 1, "the Bowen metric needs n >= 1");
    let (mut a, mut b) = (x.clone(), y.clone());
    let mut best = circle_dist(&a, &b);
    for _ in 1..n {
        a = map.apply(&a);
        b = map.apply(&b);
        let d = circle_dist(&a, &b);
        if d > best {
            best = d;
        }
    }
    best
}

/// `B_n(x, eps) = {y : d(f^i x, f^i y) < eps for all i < n}` as an exact
/// union of open arcs.
///
/// Built backwards along the orbit of `x`:
/// `B_n(x) = ball(x) ∩ f^{-1}(B_{n-1}(f x))`, which keeps every
/// intermediate set about as fragmented as the answer.
pub fn bowen_ball(
    map: &PLCircleMap,
    x: &CirclePoint,
    n: usize,
    eps: &Rational,
) -> Result<ArcUnion, DynamicsError> {
    bowen_ball_with_limit(map, x, n, eps, DEFAULT_DIGIT_LIMIT)
}

pub fn bowen_ball_with_limit(
    map: &PLCircleMap,
    x: &CirclePoint,
    n: usize,
    eps: &Rational,
    digit_limit: u64,
) -> Result<ArcUnion, DynamicsError> {
    if n == 0 {
        return Err(DynamicsError::ZeroSteps);
    }
    let orbit = map.iterate(x, n);
    let points = orbit.points();
    let mut ball = open_ball(&points[n - 1], eps)?;
    for i in (0..n - 1).rev() {
        let pulled = preimage_with_limit(map, &ball, digit_limit)?;
        ball = open_ball(&points[i], eps)?.intersect(&pulled);
    }
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::Arc;
    use crate::rational::{int, ratio};

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    fn arc(sn: i64, sd: i64, ln: i64, ld: i64) -> Arc {
        Arc::new(pt(sn, sd), ratio(ln, ld)).unwrap()
    }

    #[test]
    fn preimage_of_sixth_ball_under_times_six() {
        let f6 = PLCircleMap::times_p(6).unwrap();
        let ball = open_ball(&pt(0, 1), &ratio(1, 6)).unwrap();
        let pre = preimage(&f6, &ball).unwrap();
        // ((k - 1/6)/6, (k + 1/6)/6) for k = 0..5: start (6k - 1)/36, length 1/18
        let expected = ArcUnion::from_arcs((0..6).map(|k| arc(6 * k - 1, 36, 1, 18)).collect());
        assert_eq!(pre, expected);
        assert_eq!(pre.arcs().len(), 6);
        assert_eq!(pre.measure(), ratio(1, 3));
    }

    #[test]
    fn preimage_trivial_cases() {
        let f2 = PLCircleMap::times_p(2).unwrap();
        assert!(preimage(&f2, &ArcUnion::full()).unwrap().is_full());
        let a = ArcUnion::from_arcs(vec![arc(5, 6, 1, 4), arc(1, 3, 1, 5)]);
        assert_eq!(preimage(&PLCircleMap::identity(), &a).unwrap(), a);
    }

    #[test]
    fn constant_piece_inside_target_is_rejected() {
        let plateau = PLCircleMap::pl(vec![
            (int(0), int(0)),
            (ratio(1, 2), int(1)),
            (int(1), int(1)),
        ])
        .unwrap();
        let hit = open_ball(&pt(0, 1), &ratio(1, 10)).unwrap();
        assert!(matches!(
            preimage(&plateau, &hit),
            Err(DynamicsError::UnsupportedDegenerate { piece: 1, .. })
        ));
        let miss = open_ball(&pt(1, 2), &ratio(1, 10)).unwrap();
        let pre = preimage(&plateau, &miss).unwrap();
        assert_eq!(pre, ArcUnion::from_arc(arc(2, 10, 1, 10)));
    }

    #[test]
    fn bowen_dist_examples() {
        let f2 = PLCircleMap::times_p(2).unwrap();
        assert_eq!(bowen_dist(&f2, &pt(0, 1), &pt(1, 4), 2), ratio(1, 2));
        assert_eq!(bowen_dist(&f2, &pt(0, 1), &pt(1, 8), 2), ratio(1, 4));
        assert_eq!(bowen_dist(&f2, &pt(3, 7), &pt(3, 7), 5), int(0));
    }

    #[test]
    fn bowen_ball_examples() {
        let sixth = ratio(1, 6);
        for p in [1, 2, 6, 36] {
            let f = PLCircleMap::times_p(p).unwrap();
            assert_eq!(
                bowen_ball(&f, &pt(0, 1), 1, &sixth).unwrap(),
                ArcUnion::from_arc(arc(-1, 6, 1, 3))
            );
        }
        let f6 = PLCircleMap::times_p(6).unwrap();
        let b2 = bowen_ball(&f6, &pt(0, 1), 2, &sixth).unwrap();
        let expected = ArcUnion::from_arcs(vec![
            Arc::between(&pt(-1, 36), &pt(1, 36)),
            Arc::between(&pt(5, 36), &pt(1, 6)),
            Arc::between(&pt(-1, 6), &pt(-5, 36)),
        ]);
        assert_eq!(b2, expected);
        assert_eq!(b2.measure(), ratio(1, 9));
        let shifted = bowen_ball(&f6, &pt(1, 2), 2, &sixth).unwrap();
        assert_eq!(shifted, b2.translate(&pt(1, 2)));
    }

    #[test]
    fn bowen_ball_errors() {
        let f2 = PLCircleMap::times_p(2).unwrap();
        assert!(matches!(
            bowen_ball(&f2, &pt(0, 1), 0, &ratio(1, 6)),
            Err(DynamicsError::ZeroSteps)
        ));
        assert!(matches!(
            bowen_ball(&f2, &pt(0, 1), 2, &int(0)),
            Err(DynamicsError::Circle(_))
        ));
    }

    #[test]
    fn digit_guard_aborts() {
        let skew = PLCircleMap::pl(vec![
            (int(0), int(0)),
            (ratio(1, 3), ratio(1, 7)),
            (int(1), int(1)),
        ])
        .unwrap();
        let res = bowen_ball_with_limit(&skew, &pt(1, 5), 30, &ratio(1, 100), 12);
        assert!(matches!(res, Err(DynamicsError::DigitLimit(_))));
    }
}
