use bowen::circle::{circle_dist, open_ball, Arc, ArcUnion, CirclePoint};
use bowen::coloring::doubling_coloring;
use bowen::dynamics::{bowen_ball, bowen_dist, preimage, DynamicsError, PLCircleMap};
use bowen::rational::{ratio, Rational};
use bowen::separated::{least_sep_index, OrbitTable};
use num::{One, Zero};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = CirclePoint> {
    (1i64..=60).prop_flat_map(|d| (0..d).prop_map(move |n| CirclePoint::from_ratio(n, d)))
}

fn radius() -> impl Strategy<Value = Rational> {
    (2i64..=40).prop_flat_map(|d| (1..d).prop_map(move |n| ratio(n, 2 * d)))
}

fn arc() -> impl Strategy<Value = Arc> {
    (point(), 1i64..=24, 1i64..=24)
        .prop_filter("length in (0, 1]", |(_, n, d)| n <= d)
        .prop_map(|(s, n, d)| Arc::new(s, ratio(n, d)).unwrap())
}

fn union() -> impl Strategy<Value = ArcUnion> {
    prop::collection::vec(arc(), 0..5).prop_map(ArcUnion::from_arcs)
}

fn times_map() -> impl Strategy<Value = PLCircleMap> {
    (1u64..=7).prop_map(|p| PLCircleMap::times_p(p).unwrap())
}

/// Continuous lifts with 2 to 4 pieces, breakpoints on a twelfths grid.
fn pl_map() -> impl Strategy<Value = PLCircleMap> {
    (
        prop::sample::subsequence((1i64..12).collect::<Vec<_>>(), 1..=3),
        prop::collection::vec(-12i64..=36, 3),
        0i64..12,
        prop::sample::select(vec![-1i64, 1, 2, 3]),
    )
        .prop_map(|(ts, vals, start, degree)| {
            let mut bp = vec![(Rational::zero(), ratio(start, 12))];
            for (t, v) in ts.iter().zip(vals) {
                bp.push((ratio(*t, 12), ratio(v, 12)));
            }
            bp.push((
                Rational::one(),
                ratio(start, 12) + Rational::from_integer(degree.into()),
            ));
            PLCircleMap::pl(bp).unwrap()
        })
}

proptest! {
    #[test]
    fn metric_axioms(x in point(), y in point(), z in point()) {
        let half = ratio(1, 2);
        prop_assert_eq!(circle_dist(&x, &y), circle_dist(&y, &x));
        prop_assert!(circle_dist(&x, &x).is_zero());
        prop_assert_eq!(circle_dist(&x, &y).is_zero(), x == y);
        prop_assert!(circle_dist(&x, &y) <= half);
        prop_assert!(circle_dist(&x, &z) <= circle_dist(&x, &y) + circle_dist(&y, &z));
    }

    #[test]
    fn distance_is_translation_invariant(x in point(), y in point(), t in point()) {
        prop_assert_eq!(
            circle_dist(&x.rotate(t.value()), &y.rotate(t.value())),
            circle_dist(&x, &y)
        );
    }

    #[test]
    fn measure_laws(a in union(), b in union()) {
        let both = a.intersect(&b).measure() + a.union(&b).measure();
        prop_assert_eq!(both, a.measure() + b.measure());
        prop_assert_eq!(a.complement().measure(), Rational::one() - a.measure());
        prop_assert!(a.intersect(&b).is_subset_of(&a));
        prop_assert!(a.is_subset_of(&a.union(&b)));
    }

    #[test]
    fn canonical_form_is_idempotent(a in union()) {
        if !a.is_full() {
            prop_assert_eq!(&ArcUnion::from_arcs(a.arcs().to_vec()), &a);
        }
        prop_assert_eq!(&a.union(&a), &a);
        // Complements are taken open, so isolated boundary points come back.
        prop_assert!(a.is_subset_of(&a.complement().complement()));
        prop_assert_eq!(a.complement().complement().measure(), a.measure());
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<ArcUnion>(&text).unwrap(), a);
    }

    #[test]
    fn membership_matches_definition(a in union(), x in point()) {
        let by_arcs = a.is_full() || a.arcs().iter().any(|arc| arc.contains(&x));
        prop_assert_eq!(a.contains(&x), by_arcs);
        prop_assert_eq!(a.complement().contains(&x), !a.contains(&x) && !a.boundary().contains(&x));
    }

    #[test]
    fn preimage_under_times_p(f in times_map(), a in union(), x in point()) {
        let pre = preimage(&f, &a).unwrap();
        prop_assert_eq!(pre.contains(&x), a.contains(&f.apply(&x)));
        prop_assert_eq!(pre.measure(), a.measure());
    }

    #[test]
    fn preimage_under_pl_maps(f in pl_map(), a in union(), x in point()) {
        match preimage(&f, &a) {
            Ok(pre) => prop_assert_eq!(pre.contains(&x), a.contains(&f.apply(&x))),
            Err(DynamicsError::UnsupportedDegenerate { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn ball_membership_is_bowen_distance(
        f in times_map(), c in point(), y in point(), n in 1usize..4, eps in radius()
    ) {
        let ball = bowen_ball(&f, &c, n, &eps).unwrap();
        prop_assert_eq!(ball.contains(&y), bowen_dist(&f, &c, &y, n) < eps);
    }

    #[test]
    fn pl_ball_membership(f in pl_map(), c in point(), y in point(), n in 1usize..3, eps in radius()) {
        if let Ok(ball) = bowen_ball(&f, &c, n, &eps) {
            prop_assert_eq!(ball.contains(&y), bowen_dist(&f, &c, &y, n) < eps);
        }
    }

    #[test]
    fn balls_are_nested(f in times_map(), c in point(), n in 1usize..4, eps in radius()) {
        let outer = bowen_ball(&f, &c, n, &eps).unwrap();
        let inner = bowen_ball(&f, &c, n + 1, &eps).unwrap();
        prop_assert!(inner.is_subset_of(&outer));
        prop_assert_eq!(
            bowen_ball(&f, &c, 1, &eps).unwrap(),
            open_ball(&c, &eps).unwrap()
        );
    }

    #[test]
    fn balls_of_times_p_are_translates(f in times_map(), x in point(), n in 1usize..4, eps in radius()) {
        let at_zero = bowen_ball(&f, &CirclePoint::zero(), n, &eps).unwrap();
        prop_assert_eq!(bowen_ball(&f, &x, n, &eps).unwrap(), at_zero.translate(&x));
    }

    #[test]
    fn orbit_table_routes_agree(
        f in times_map(), pts in prop::collection::btree_set(point(), 2..10), n in 1usize..5, eps in radius()
    ) {
        let pts: Vec<CirclePoint> = pts.into_iter().collect();
        let fast = OrbitTable::new(&f, &pts, n, &eps);
        let slow = OrbitTable::new(&f, &pts, n, &eps).without_fast_path();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                prop_assert_eq!(fast.least_index(i, j), slow.least_index(i, j));
                prop_assert_eq!(fast.bowen_dist(i, j), slow.bowen_dist(i, j));
                prop_assert_eq!(fast.bowen_dist(i, j), bowen_dist(&f, &pts[i], &pts[j], n));
            }
        }
    }

    #[test]
    fn coloring_matches_least_index(r in 1usize..8, i in 0usize..128, j in 0usize..128) {
        let m = 1usize << r;
        let (i, j) = (i % m, j % m);
        prop_assume!(i != j);
        let c = doubling_coloring(r).unwrap();
        let f2 = PLCircleMap::times_p(2).unwrap();
        let x = CirclePoint::from_ratio(i as i64, m as i64);
        let y = CirclePoint::from_ratio(j as i64, m as i64);
        let index = least_sep_index(&f2, &x, &y, r, &ratio(1, 3)).unwrap();
        prop_assert_eq!(index, Some(c.color(i, j) as usize));
    }
}
