mod common;

use common::*;
use curveprox::distance::{d_lb, d_ub, gjk_distance, ConvexObstacle, SupportMap, DEFAULT_TOLERANCE};
use curveprox::io::CurveDoc;
use curveprox::oracle::{sampled_arc_length, sampled_min_distance};
use curveprox::quadrature::{integrate, QuadratureConfig};
use curveprox::query::{collision_decision, min_distance_to, tolerance_decision, Target};
use curveprox::*;
use proptest::prelude::*;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn quad() -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-12,
        max_splits: 20_000,
    }
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig::with_cases(cases)
}

/// A curve well clear of a polygon, so distances are positive.
fn separated(r: &mut ChaCha8Rng) -> (Curve<2>, ConvexObstacle<2>) {
    let order = index(r, 2, 12);
    let curve = random_bezier(r, order);
    let center = v2(uniform(r, 1.4, 2.0), uniform(r, -0.5, 1.5));
    (curve, ConvexObstacle::polytope(random_polygon_points(r, center, 0.3, 8)).unwrap())
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn derivative_matches_finite_differences(seed in any::<u64>(), s in 0.01f64..0.99) {
        let mut r = rng(seed);
        let curve = random_curve(&mut r);
        let d = curve.domain();
        let t = d.lo() + s * d.length();
        let h = 1e-6 * d.length();
        let fd = (curve.point(t + h) - curve.point(t - h)) / (2.0 * h);
        let v = curve.velocity(t);
        prop_assert!((fd - v).norm() <= 1e-5 * (1.0 + v.norm()), "fd {fd:?} vs {v:?}");
    }

    #[test]
    fn speed_squared_integral_matches_quadrature(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = random_curve(&mut r);
        let q = random_subinterval(&mut r, &curve);
        let exact = curve.speed_squared_integral(q).unwrap();
        let numeric = integrate(|t| curve.velocity(t).norm_squared(), q.lo(), q.hi(), &quad()).unwrap();
        prop_assert!((exact - numeric).abs() <= 1e-9 * (1.0 + numeric), "{exact} vs {numeric}");
    }

    #[test]
    fn bound_dominates_arc_length(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = random_curve(&mut r);
        let q = random_subinterval(&mut r, &curve);
        let s = curve.arc_length(q, &quad()).unwrap();
        let u = curve.arc_length_upper_bound(q).unwrap();
        prop_assert!(u >= s * (1.0 - 1e-9), "u {u} < s {s}");
    }

    #[test]
    fn bound_shrinks_under_halving(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = random_curve(&mut r);
        let mut q = curve.domain();
        let mut u = curve.arc_length_upper_bound(q).unwrap();
        for _ in 0..20 {
            let (left, right) = q.bisect().unwrap();
            let ul = curve.arc_length_upper_bound(left).unwrap();
            let ur = curve.arc_length_upper_bound(right).unwrap();
            let cap = u / std::f64::consts::SQRT_2 * (1.0 + 1e-9) + 1e-15;
            prop_assert!(ul <= cap && ur <= cap, "{ul} {ur} vs parent {u}");
            (q, u) = if r.next_u64() % 2 == 0 { (left, ul) } else { (right, ur) };
        }
        prop_assert!(u <= 1e-2 * curve.arc_length_upper_bound(curve.domain()).unwrap());
    }

    #[test]
    fn hull_contains_segment(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = random_curve(&mut r);
        let q = random_subinterval(&mut r, &curve);
        let hull = SpheroidHull::of_segment(&curve.segment(q).unwrap()).unwrap();
        for k in 0..=200 {
            let t = (q.lo() + q.length() * k as f64 / 200.0).min(q.hi());
            prop_assert!(hull.contains(&curve.point(t), 1e-9), "t = {t}");
        }
    }

    #[test]
    fn segment_bounds_bracket_sampled_minimum(seed in any::<u64>()) {
        const N: usize = 401;
        let mut r = rng(seed);
        let curve = random_curve(&mut r);
        let q = random_subinterval(&mut r, &curve);
        let center = curve.point(q.midpoint()) + random_point(&mut r, v2(-1.5, -1.5), v2(1.5, 1.5));
        let obstacle = random_obstacle(&mut r, center, 0.5);
        let seg = curve.segment(q).unwrap();
        let lb = d_lb(&seg, &obstacle).unwrap();
        let ub = d_ub(&seg, &obstacle).unwrap().distance;
        let sampled = (0..N)
            .map(|k| {
                let t = (q.lo() + q.length() * k as f64 / (N - 1) as f64).min(q.hi());
                gjk_distance(&ConvexObstacle::point(curve.point(t)), &obstacle, 1e-13).unwrap().distance
            })
            .fold(f64::INFINITY, f64::min);
        let slack = sampled_max_speed(&curve, q, N) * q.length() / (2.0 * (N - 1) as f64);
        prop_assert!(lb <= sampled + slack, "lb {lb} sampled {sampled} slack {slack}");
        prop_assert!(sampled <= ub + 1e-9, "sampled {sampled} ub {ub}");
    }

    #[test]
    fn oracle_ordering(seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = random_curve(&mut r);
        let q = random_subinterval(&mut r, &curve);
        let chords = sampled_arc_length(&curve, q, 1000).unwrap();
        let s = curve.arc_length(q, &quad()).unwrap();
        let u = curve.arc_length_upper_bound(q).unwrap();
        prop_assert!(chords <= s * (1.0 + 1e-12) + 1e-14, "chords {chords} > s {s}");
        prop_assert!(s <= u * (1.0 + 1e-9), "s {s} > u {u}");
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn gjk_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ca = random_point(&mut r, v2(-2.0, -2.0), v2(2.0, 2.0));
        let pa = random_polygon_points(&mut r, ca, 1.0, 8);
        let cb = random_point(&mut r, v2(-2.0, -2.0), v2(2.0, 2.0));
        let pb = random_polygon_points(&mut r, cb, 1.0, 8);
        let a = ConvexObstacle::polytope(pa.clone()).unwrap();
        let b = ConvexObstacle::polytope(pb.clone()).unwrap();
        let w = gjk_distance(&a, &b, DEFAULT_TOLERANCE).unwrap();
        let bf = brute_force_polygon_distance(&pa, &pb);
        prop_assert!((w.distance - bf).abs() <= 1e-9, "gjk {} brute force {bf}", w.distance);
        // witnesses lie in their sets: no support value is exceeded
        for dir in [v2(1.0, 0.0), v2(0.0, 1.0), v2(-1.0, 0.3), v2(0.2, -1.0)] {
            prop_assert!(w.point_a.dot(&dir) <= a.support_point(&dir).dot(&dir) + 1e-12);
            prop_assert!(w.point_b.dot(&dir) <= b.support_point(&dir).dot(&dir) + 1e-12);
        }
        prop_assert!(((w.point_a - w.point_b).norm() - w.distance).abs() <= 1e-12);
    }

    #[test]
    fn gjk_symmetric_and_translation_invariant(seed in any::<u64>(), dx in -10.0f64..10.0, dy in -10.0f64..10.0) {
        let mut r = rng(seed);
        let ca = random_point(&mut r, v2(-2.0, -2.0), v2(2.0, 2.0));
        let a = random_obstacle(&mut r, ca, 1.0);
        let cb = random_point(&mut r, v2(-2.0, -2.0), v2(2.0, 2.0));
        let b = random_obstacle(&mut r, cb, 1.0);
        let shift = v2(dx, dy);
        let d = |x: &ConvexObstacle<2>, y: &ConvexObstacle<2>| gjk_distance(x, y, DEFAULT_TOLERANCE).unwrap().distance;
        let dab = d(&a, &b);
        prop_assert!((dab - d(&b, &a)).abs() <= 1e-12);
        prop_assert!((dab - d(&a.translated(&shift), &b.translated(&shift))).abs() <= 1e-11);
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn trace_gap_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (curve, obstacle) = separated(&mut r);
        let res = min_distance(&curve, &obstacle, &QueryConfig::default().traced()).unwrap();
        prop_assert!(res.converged);
        let trace = res.trace.unwrap();
        prop_assert_eq!(trace.len(), res.iterations + 1);
        for w in trace.windows(2) {
            prop_assert!(w[1].lower >= w[0].lower && w[1].upper <= w[0].upper);
        }
    }

    #[test]
    fn witnesses_realize_the_upper_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (curve, obstacle) = separated(&mut r);
        let res = min_distance(&curve, &obstacle, &QueryConfig::default()).unwrap();
        let (t, _) = res.witness_params;
        let (p, o) = res.witness_points;
        prop_assert!(curve.domain().contains(t));
        prop_assert!((curve.point(t) - p).norm() <= 1e-12);
        prop_assert!(((p - o).norm() - res.upper).abs() <= 1e-9);
        let back = gjk_distance(&ConvexObstacle::point(o), &obstacle, 1e-13).unwrap().distance;
        prop_assert!(back <= 1e-9, "obstacle witness {back} outside");
    }

    #[test]
    fn decisions_agree_with_distance(seed in any::<u64>(), frac in 0.05f64..1.95) {
        let mut r = rng(seed);
        let (curve, obstacle) = separated(&mut r);
        let cfg = QueryConfig::default();
        let d = min_distance(&curve, &obstacle, &cfg).unwrap();
        let delta = frac * d.lower;
        prop_assume!((d.lower - delta).abs() > 1e-6);
        prop_assert_eq!(tolerance_verify(&curve, &obstacle, delta, &cfg).unwrap(), d.lower > delta);
        prop_assert!(!collision_detect(&curve, &obstacle, &cfg).unwrap());
        let into = Curve::bezier_unit(vec![curve.point(0.0), obstacle.interior_hint()]).unwrap();
        prop_assert!(collision_detect(&into, &obstacle, &cfg).unwrap());
    }

    #[test]
    fn early_exits_do_not_cost_more(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (curve, obstacle) = separated(&mut r);
        let cfg = QueryConfig::default();
        let target = Target::Obstacle(&obstacle);
        let full = min_distance_to(&curve, target, &cfg).unwrap();
        let tol = tolerance_decision(&curve, target, 0.5 * full.lower, &cfg).unwrap();
        let hit = collision_decision(&curve, target, &cfg).unwrap();
        prop_assert_eq!(tol.verdict, Some(true));
        prop_assert_eq!(hit.verdict, Some(false));
        prop_assert!(hit.iterations <= tol.iterations);
        prop_assert!(tol.iterations <= full.iterations.max(1));
    }

    #[test]
    fn curve_pair_queries_are_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let order = index(&mut r, 2, 6);
        let a = random_bezier(&mut r, order);
        let order = index(&mut r, 2, 6);
        let pts = (0..=order).map(|_| random_point(&mut r, v2(0.0, 1.1), v2(1.0, 2.0))).collect();
        let b = Curve::bezier_unit(pts).unwrap();
        let cfg = QueryConfig::default();
        let ab = min_distance_curves(&a, &b, &cfg).unwrap();
        let ba = min_distance_curves(&b, &a, &cfg).unwrap();
        prop_assert!(ab.converged && ba.converged);
        prop_assert!(ab.lower <= ba.upper + 1e-12 && ba.lower <= ab.upper + 1e-12);
    }

    #[test]
    fn sampled_minimum_converges(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (curve, obstacle) = separated(&mut r);
        let coarse = sampled_min_distance(&curve, &obstacle, 101).unwrap();
        let fine = sampled_min_distance(&curve, &obstacle, 201).unwrap();
        prop_assert!(fine.value <= coarse.value + coarse.slack);
        let exact = min_distance(&curve, &obstacle, &QueryConfig::default()).unwrap();
        prop_assert!(exact.lower <= fine.value + 1e-9);
        prop_assert!(fine.value - exact.lower <= fine.slack + 1e-9);
    }

    #[test]
    fn curve_documents_round_trip(seed in any::<u64>(), s in 0.0f64..1.0) {
        let mut r = rng(seed);
        let curve = random_curve(&mut r);
        let json = serde_json::to_string(&CurveDoc::from_curve(&curve).unwrap()).unwrap();
        let back: Curve<2> = curveprox::io::parse_curve(&json).unwrap();
        let t = curve.domain().lo() + s * curve.domain().length();
        prop_assert_eq!(back.domain(), curve.domain());
        prop_assert!((back.point(t) - curve.point(t)).norm() <= 1e-14 * (1.0 + curve.point(t).norm()));
    }
}
