#![allow(dead_code)]

use std::f64::consts::PI;

use curveprox::distance::ConvexObstacle;
use curveprox::harness::fixtures::unit_f64;
use curveprox::{Curve, Interval, TrigTerm, Vector};
use rand::RngCore;

pub type V2 = Vector<2>;

pub fn v2(x: f64, y: f64) -> V2 {
    V2::new(x, y)
}

pub fn uniform(rng: &mut impl RngCore, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit_f64(rng)
}

pub fn index(rng: &mut impl RngCore, lo: usize, hi: usize) -> usize {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

pub fn random_point(rng: &mut impl RngCore, lo: V2, hi: V2) -> V2 {
    v2(uniform(rng, lo.x, hi.x), uniform(rng, lo.y, hi.y))
}

/// Bézier of the given order with control points in the unit square.
pub fn random_bezier(rng: &mut impl RngCore, order: usize) -> Curve<2> {
    let pts = (0..=order).map(|_| random_point(rng, v2(0.0, 0.0), v2(1.0, 1.0))).collect();
    Curve::bezier_unit(pts).expect("random bezier")
}

/// Polynomial of the given degree on `[-1, 1]` with coefficients in `[-1, 1]`.
pub fn random_power(rng: &mut impl RngCore, degree: usize) -> Curve<2> {
    let coeffs = (0..=degree).map(|_| random_point(rng, v2(-1.0, -1.0), v2(1.0, 1.0))).collect();
    Curve::power(Interval::domain(-1.0, 1.0).unwrap(), coeffs).expect("random power")
}

/// Sum of up to five harmonics with integer and non-integer frequencies on `[0, 2π]`.
pub fn random_trig(rng: &mut impl RngCore) -> Curve<2> {
    let n = index(rng, 1, 5);
    let terms = (0..n)
        .map(|_| TrigTerm {
            dim: index(rng, 0, 1),
            amplitude_cos: uniform(rng, -1.0, 1.0),
            amplitude_sin: uniform(rng, -1.0, 1.0),
            frequency: if rng.next_u64() % 2 == 0 {
                index(rng, 1, 6) as f64
            } else {
                uniform(rng, 0.2, 5.0)
            },
            phase: uniform(rng, -PI, PI),
        })
        .collect();
    let slope = random_point(rng, v2(-0.3, -0.3), v2(0.3, 0.3));
    Curve::trigonometric(Interval::domain(0.0, 2.0 * PI).unwrap(), v2(0.0, 0.0), slope, terms)
        .expect("random trig")
}

/// A Bézier (order 2..=45), power or trig curve, in roughly equal proportions.
pub fn random_curve(rng: &mut impl RngCore) -> Curve<2> {
    match rng.next_u64() % 3 {
        0 => {
            let order = index(rng, 2, 45);
            random_bezier(rng, order)
        }
        1 => {
            let degree = index(rng, 1, 8);
            random_power(rng, degree)
        }
        _ => random_trig(rng),
    }
}

/// A random sub-interval of the curve's domain, at least 1e-3 of its length.
pub fn random_subinterval(rng: &mut impl RngCore, curve: &Curve<2>) -> Interval {
    let d = curve.domain();
    let a = uniform(rng, 0.0, 1.0);
    let b = uniform(rng, 0.0, 1.0);
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let hi = hi.max(lo + 1e-3).min(1.0);
    let lo = lo.min(hi - 1e-3);
    Interval::new(d.lo() + lo * d.length(), d.lo() + hi * d.length()).unwrap()
}

/// Curves whose speed is constant, with their exact arc length on the given interval.
pub fn constant_speed_curve(rng: &mut impl RngCore) -> (Curve<2>, Interval, f64) {
    match rng.next_u64() % 3 {
        0 => {
            let r = uniform(rng, 0.1, 3.0);
            let w = uniform(rng, 0.5, 4.0);
            let phase = uniform(rng, -PI, PI);
            let c = Curve::trigonometric(
                Interval::domain(0.0, 2.0 * PI).unwrap(),
                random_point(rng, v2(-1.0, -1.0), v2(1.0, 1.0)),
                v2(0.0, 0.0),
                vec![
                    TrigTerm::cos(0, r, w).with_phase(phase),
                    TrigTerm::sin(1, r, w).with_phase(phase),
                ],
            )
            .unwrap();
            let q = random_subinterval(rng, &c);
            (c, q, r * w * q.length())
        }
        1 => {
            let a = random_point(rng, v2(-1.0, -1.0), v2(1.0, 1.0));
            let b = random_point(rng, v2(-1.0, -1.0), v2(1.0, 1.0));
            let c = Curve::power(Interval::domain(-1.0, 1.0).unwrap(), vec![a, b]).unwrap();
            let q = random_subinterval(rng, &c);
            (c, q, b.norm() * q.length())
        }
        _ => {
            // evenly spaced collinear control points trace the chord at constant speed
            let n = index(rng, 1, 12);
            let a = random_point(rng, v2(0.0, 0.0), v2(1.0, 1.0));
            let b = random_point(rng, v2(0.0, 0.0), v2(1.0, 1.0));
            let pts = (0..=n).map(|i| a + (b - a) * (i as f64 / n as f64)).collect();
            let c = Curve::bezier_unit(pts).unwrap();
            let q = random_subinterval(rng, &c);
            (c, q, (b - a).norm() * q.length())
        }
    }
}

/// Up to `max_vertices` random points in a disc, as a polytope obstacle.
pub fn random_polygon_points(rng: &mut impl RngCore, center: V2, radius: f64, max_vertices: usize) -> Vec<V2> {
    let n = index(rng, 1, max_vertices);
    (0..n)
        .map(|_| {
            let r = radius * unit_f64(rng).sqrt();
            let a = uniform(rng, 0.0, 2.0 * PI);
            center + v2(r * a.cos(), r * a.sin())
        })
        .collect()
}

pub fn random_obstacle(rng: &mut impl RngCore, center: V2, radius: f64) -> ConvexObstacle<2> {
    match rng.next_u64() % 4 {
        0 => ConvexObstacle::point(center),
        1 => ConvexObstacle::ball(center, uniform(rng, 0.05, 1.0) * radius).unwrap(),
        _ => ConvexObstacle::polytope(random_polygon_points(rng, center, radius, 8)).unwrap(),
    }
}

/// Largest speed over an `n`-point grid on `q`.
pub fn sampled_max_speed(curve: &Curve<2>, q: Interval, n: usize) -> f64 {
    (0..n)
        .map(|i| curve.velocity(q.lo() + q.length() * i as f64 / (n - 1) as f64).norm())
        .fold(0.0, f64::max)
}

// Brute-force planar geometry, independent of the GJK code.

fn cross(o: V2, a: V2, b: V2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Counter-clockwise convex hull by monotone chain; collinear points are dropped.
pub fn convex_hull(points: &[V2]) -> Vec<V2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<V2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &V2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

pub fn point_segment_distance(p: V2, a: V2, b: V2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn segments_cross(a: V2, b: V2, c: V2, d: V2) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

pub fn segment_distance(a: V2, b: V2, c: V2, d: V2) -> f64 {
    if segments_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

fn inside(hull: &[V2], p: V2) -> bool {
    hull.len() >= 3 && (0..hull.len()).all(|i| cross(hull[i], hull[(i + 1) % hull.len()], p) >= 0.0)
}

fn edges(hull: &[V2]) -> Vec<(V2, V2)> {
    match hull.len() {
        1 => vec![(hull[0], hull[0])],
        2 => vec![(hull[0], hull[1])],
        n => (0..n).map(|i| (hull[i], hull[(i + 1) % n])).collect(),
    }
}

/// Distance between the convex hulls of two point sets, by checking every edge pair.
pub fn brute_force_polygon_distance(a: &[V2], b: &[V2]) -> f64 {
    let ha = convex_hull(a);
    let hb = convex_hull(b);
    if inside(&ha, hb[0]) || inside(&hb, ha[0]) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for &(p, q) in &edges(&ha) {
        for &(r, s) in &edges(&hb) {
            best = best.min(segment_distance(p, q, r, s));
        }
    }
    best
}
