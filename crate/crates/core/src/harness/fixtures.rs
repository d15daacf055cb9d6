//! Planar benchmark scenes: six curve–polygon and curve–curve problems and
//! the three arc-length test curves.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{Curve, CustomCurve, TrigTerm, Vector};
use crate::distance::ConvexObstacle;
use crate::interval::Interval;
use crate::quadrature::gauss_kronrod_15;
use crate::query::Target;

type V2 = Vector<2>;

fn v2(x: f64, y: f64) -> V2 {
    V2::new(x, y)
}

/// Vertices of a regular `n`-gon.
pub fn regular_polygon(center: V2, radius: f64, n: usize, rotation: f64) -> ConvexObstacle<2> {
    let vs = (0..n)
        .map(|k| {
            let a = rotation + 2.0 * PI * k as f64 / n as f64;
            center + radius * v2(a.cos(), a.sin())
        })
        .collect();
    ConvexObstacle::polytope(vs).expect("regular polygon is valid")
}

#[derive(Debug, Clone)]
pub enum FixtureTarget {
    Obstacle(ConvexObstacle<2>),
    Curve(Curve<2>),
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub curve: Curve<2>,
    pub target: FixtureTarget,
}

impl Fixture {
    pub fn target(&self) -> Target<'_, 2> {
        match &self.target {
            FixtureTarget::Obstacle(o) => Target::Obstacle(o),
            FixtureTarget::Curve(c) => Target::Curve(c),
        }
    }
}

fn full_turn() -> Interval {
    Interval::domain(0.0, 2.0 * PI).expect("valid domain")
}

/// `x = sin³t`, `y = (13 cos t − 5 cos 2t − 2 cos 3t − cos 4t) / 16`.
pub fn heart_curve() -> Curve<2> {
    Curve::trigonometric(
        full_turn(),
        Vector::zeros(),
        Vector::zeros(),
        vec![
            TrigTerm::sin(0, 0.75, 1.0),
            TrigTerm::sin(0, -0.25, 3.0),
            TrigTerm::cos(1, 13.0 / 16.0, 1.0),
            TrigTerm::cos(1, -5.0 / 16.0, 2.0),
            TrigTerm::cos(1, -2.0 / 16.0, 3.0),
            TrigTerm::cos(1, -1.0 / 16.0, 4.0),
        ],
    )
    .expect("valid curve")
}

/// Five-cusped epicycloid scaled to the unit disc.
pub fn epicycloid() -> Curve<2> {
    Curve::trigonometric(
        full_turn(),
        Vector::zeros(),
        Vector::zeros(),
        vec![
            TrigTerm::cos(0, 6.0 / 7.0, 1.0),
            TrigTerm::cos(0, -1.0 / 7.0, 6.0),
            TrigTerm::sin(1, 6.0 / 7.0, 1.0),
            TrigTerm::sin(1, -1.0 / 7.0, 6.0),
        ],
    )
    .expect("valid curve")
}

/// `∫₀ᵗ (cos(s²/2), sin(s²/2)) ds`, evaluated with fixed Gauss-Kronrod panels
/// of width at most 1/4 so that the position is a smooth function of `t`.
fn fresnel(t: f64) -> V2 {
    let panels = (t.abs() / 0.25).ceil().max(1.0) as usize;
    let h = t / panels as f64;
    let mut acc = V2::zeros();
    for k in 0..panels {
        let a = k as f64 * h;
        let b = if k + 1 == panels { t } else { a + h };
        acc.x += gauss_kronrod_15(&|s: f64| (0.5 * s * s).cos(), a, b).value;
        acc.y += gauss_kronrod_15(&|s: f64| (0.5 * s * s).sin(), a, b).value;
    }
    acc
}

/// Unit-speed clothoid on `[−2π, 2π]`; positions come from numerical integration.
pub fn euler_spiral() -> Curve<2> {
    let custom = CustomCurve::new(fresnel, |t: f64| v2((0.5 * t * t).cos(), (0.5 * t * t).sin()))
        .with_speed_squared_antiderivative(|t| t);
    Curve::custom(Interval::domain(-2.0 * PI, 2.0 * PI).expect("valid domain"), custom)
        .expect("valid curve")
}

/// Involute of a circle of radius `r`, rotated by `angle` and shifted by `offset`.
pub fn involute(r: f64, angle: f64, offset: V2) -> Curve<2> {
    let (c, s) = (angle.cos(), angle.sin());
    let rot = move |p: V2| v2(c * p.x - s * p.y, s * p.x + c * p.y);
    let custom = CustomCurve::new(
        move |t: f64| offset + rot(r * v2(t.cos() + t * t.sin(), t.sin() - t * t.cos())),
        move |t: f64| rot(r * t * v2(t.cos(), t.sin())),
    )
    .with_speed_squared_antiderivative(move |t| r * r * t * t * t / 3.0);
    Curve::custom(full_turn(), custom).expect("valid curve")
}

/// `x = cos t − sin²t / √2`, `y = cos t sin t`.
pub fn fish_curve() -> Curve<2> {
    let k = 0.5 * FRAC_1_SQRT_2;
    Curve::trigonometric(
        full_turn(),
        v2(-k, 0.0),
        Vector::zeros(),
        vec![
            TrigTerm::cos(0, 1.0, 1.0),
            TrigTerm::cos(0, k, 2.0),
            TrigTerm::sin(1, 0.5, 2.0),
        ],
    )
    .expect("valid curve")
}

pub fn lissajous() -> Curve<2> {
    Curve::trigonometric(
        full_turn(),
        v2(2.3, 0.0),
        Vector::zeros(),
        vec![
            TrigTerm::sin(0, 0.6, 3.0).with_phase(FRAC_PI_2),
            TrigTerm::sin(1, 0.6, 2.0),
        ],
    )
    .expect("valid curve")
}

/// Uniform double in `[0, 1)` from the top 53 bits of a 64-bit draw.
pub fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Bézier with `n + 1` control points at evenly spaced `x` and random `y` in `[y_lo, y_hi)`.
pub fn random_graph_bezier(rng: &mut impl RngCore, n: usize, y_lo: f64, y_hi: f64) -> Curve<2> {
    let pts = (0..=n)
        .map(|i| v2(i as f64 / n as f64, y_lo + (y_hi - y_lo) * unit_f64(rng)))
        .collect();
    Curve::bezier_unit(pts).expect("valid curve")
}

pub fn heart() -> Fixture {
    Fixture {
        name: "heart",
        curve: heart_curve(),
        target: FixtureTarget::Obstacle(regular_polygon(v2(2.0, 0.2), 0.6, 6, 0.1)),
    }
}

pub fn epicycloid_polygon() -> Fixture {
    Fixture {
        name: "epicycloid",
        curve: epicycloid(),
        target: FixtureTarget::Obstacle(regular_polygon(v2(1.4, 1.1), 0.4, 5, 0.3)),
    }
}

pub fn euler_spiral_polygon() -> Fixture {
    Fixture {
        name: "euler-spiral",
        curve: euler_spiral(),
        target: FixtureTarget::Obstacle(regular_polygon(v2(1.6, 0.3), 0.35, 4, 0.2)),
    }
}

/// Two tenth-order Béziers separated by a horizontal band (their control polygons
/// lie in `y < 0.8` and `y ≥ 1`).
pub fn bezier_pair() -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    Fixture {
        name: "bezier-pair",
        curve: random_graph_bezier(&mut rng, 10, 0.0, 0.8),
        target: FixtureTarget::Curve(random_graph_bezier(&mut rng, 10, 1.0, 1.8)),
    }
}

pub fn involutes() -> Fixture {
    Fixture {
        name: "involutes",
        curve: involute(0.1, 0.0, Vector::zeros()),
        target: FixtureTarget::Curve(involute(0.1, PI, v2(1.5, 0.0))),
    }
}

pub fn fish_lissajous() -> Fixture {
    Fixture {
        name: "fish-lissajous",
        curve: fish_curve(),
        target: FixtureTarget::Curve(lissajous()),
    }
}

/// The six planar problems, curve–polygon first.
pub fn all() -> Vec<Fixture> {
    vec![
        heart(),
        epicycloid_polygon(),
        euler_spiral_polygon(),
        bezier_pair(),
        involutes(),
        fish_lissajous(),
    ]
}

/// The arc-length timing curves on `[0, 1]`: `(2 cos t, sin t)`, `(t³ + t, t)`
/// and `(1/(t + 1), t)`, the last with a hand-supplied antiderivative.
pub fn arc_length_curves() -> Vec<(&'static str, Curve<2>)> {
    let unit = Interval::domain(0.0, 1.0).expect("valid domain");
    let ellipse = Curve::trigonometric(
        unit,
        Vector::zeros(),
        Vector::zeros(),
        vec![TrigTerm::cos(0, 2.0, 1.0), TrigTerm::sin(1, 1.0, 1.0)],
    )
    .expect("valid curve");
    let cubic = Curve::power(unit, vec![v2(0.0, 0.0), v2(1.0, 1.0), v2(0.0, 0.0), v2(1.0, 0.0)])
        .expect("valid curve");
    let rational = Curve::custom(
        unit,
        CustomCurve::new(
            |t: f64| v2(1.0 / (t + 1.0), t),
            |t: f64| v2(-1.0 / ((t + 1.0) * (t + 1.0)), 1.0),
        )
        .with_speed_squared_antiderivative(|t| t - 1.0 / (3.0 * (t + 1.0).powi(3))),
    )
    .expect("valid curve");
    vec![("ellipse", ellipse), ("cubic", cubic), ("rational", rational)]
}

/// Sub-intervals of `[0, 1]` cycled through by the arc-length benchmark.
pub fn arc_length_intervals() -> Vec<Interval> {
    [(0.0, 1.0), (0.0, 0.5), (0.25, 0.75), (0.1, 0.9), (0.6, 1.0), (0.3, 0.35)]
        .iter()
        .map(|&(a, b)| Interval::new(a, b).expect("valid interval"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadratureConfig};

    #[test]
    fn heart_shape() {
        let h = heart_curve();
        assert!((h.point(0.0) - v2(0.0, 5.0 / 16.0)).norm() < 1e-15);
        let t: f64 = 1.1;
        let x = t.sin().powi(3);
        assert!((h.point(t).x - x).abs() < 1e-15);
    }

    #[test]
    fn fish_matches_definition() {
        let f = fish_curve();
        for t in [0.0, 0.7, 2.0, 4.5] {
            let s: f64 = t;
            let want = v2(s.cos() - s.sin().powi(2) * FRAC_1_SQRT_2, s.cos() * s.sin());
            assert!((f.point(t) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn fresnel_against_adaptive_quadrature() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            max_splits: 500,
        };
        for t in [-6.0, -1.3, 0.4, 2.5, 2.0 * PI] {
            let x = integrate(|s: f64| (0.5 * s * s).cos(), 0.0, t, &cfg).unwrap();
            let y = integrate(|s: f64| (0.5 * s * s).sin(), 0.0, t, &cfg).unwrap();
            assert!((fresnel(t) - v2(x, y)).norm() < 1e-13, "{t}");
        }
    }

    #[test]
    fn involute_derivative() {
        let c = involute(0.1, 0.7, v2(1.0, 2.0));
        for t in [0.5, 2.0, 5.0] {
            let h = 1e-6;
            let fd = (c.point(t + h) - c.point(t - h)) / (2.0 * h);
            assert!((fd - c.velocity(t)).norm() < 1e-8);
        }
    }

    #[test]
    fn bezier_pair_is_separated() {
        let f = bezier_pair();
        let FixtureTarget::Curve(b) = &f.target else {
            panic!()
        };
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            assert!(f.curve.point(t).y < 0.8 && b.point(t).y >= 1.0);
        }
    }

    #[test]
    fn rational_antiderivative() {
        let (_, c) = &arc_length_curves()[2];
        let q = Interval::new(0.2, 0.9).unwrap();
        let cfg = QuadratureConfig::default();
        let quad = integrate(|t| c.velocity(t).norm_squared(), 0.2, 0.9, &cfg).unwrap();
        assert!((c.speed_squared_integral(q).unwrap() - quad).abs() < 1e-13);
    }
}
