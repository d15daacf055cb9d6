//! Distances between convex sets and the per-segment distance bounds.

mod bounds;
mod gjk;
mod obstacle;

pub use bounds::{d_lb, d_lb_curves, d_ub, d_ub_curves, hull_lower_bound, hulls_lower_bound};
pub use gjk::{gjk, DistanceWitness, GjkOutcome, DEFAULT_TOLERANCE, MAX_ITERATIONS};
pub use obstacle::{ConvexObstacle, SupportMap};

pub(crate) use bounds::point_to_obstacle;

use crate::error::{Error, Result};

/// Euclidean distance between two convex obstacles, with witness points.
///
/// Fails with [`Error::GjkIterationLimit`] when the duality gap is still above
/// `tol` after [`MAX_ITERATIONS`] steps.
pub fn gjk_distance<const D: usize>(
    a: &ConvexObstacle<D>,
    b: &ConvexObstacle<D>,
    tol: f64,
) -> Result<DistanceWitness<D>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig(format!("GJK tolerance {tol}")));
    }
    let out = gjk(a, b, a.interior_hint() - b.interior_hint(), tol);
    if out.converged {
        Ok(out.witness)
    } else {
        Err(Error::GjkIterationLimit {
            lower: out.lower_bound,
            upper: out.witness.distance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Vector;
    use crate::hull::SpheroidHull;

    fn v2(x: f64, y: f64) -> Vector<2> {
        Vector::<2>::new(x, y)
    }

    fn square(x: f64, y: f64) -> ConvexObstacle<2> {
        ConvexObstacle::polytope(vec![v2(x, y), v2(x + 1.0, y), v2(x + 1.0, y + 1.0), v2(x, y + 1.0)])
            .unwrap()
    }

    #[test]
    fn point_to_ball() {
        let w = gjk_distance(
            &ConvexObstacle::point(v2(2.0, 0.0)),
            &ConvexObstacle::ball(v2(0.0, 0.0), 1.0).unwrap(),
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        assert!((w.distance - 1.0).abs() < 1e-12);
        assert!((w.point_a - v2(2.0, 0.0)).norm() < 1e-12);
        assert!((w.point_b - v2(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn square_to_point_projects_onto_face() {
        let w = gjk_distance(&square(0.0, 0.0), &ConvexObstacle::point(v2(2.0, 0.5)), 1e-12).unwrap();
        assert!((w.distance - 1.0).abs() < 1e-12);
        assert!((w.point_a - v2(1.0, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn diagonal_squares() {
        let w = gjk_distance(&square(0.0, 0.0), &square(3.0, 3.0), 1e-12).unwrap();
        assert!((w.distance - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((w.point_a - v2(1.0, 1.0)).norm() < 1e-12);
        assert!((w.point_b - v2(3.0, 3.0)).norm() < 1e-12);
    }

    #[test]
    fn overlapping_sets_have_zero_distance() {
        let w = gjk_distance(&square(0.0, 0.0), &square(0.5, 0.5), 1e-12).unwrap();
        assert_eq!(w.distance, 0.0);
        assert_eq!(w.point_a, w.point_b);
        let crossing = gjk_distance(
            &ConvexObstacle::polytope(vec![v2(0.0, 0.0), v2(1.0, 1.0)]).unwrap(),
            &ConvexObstacle::polytope(vec![v2(0.0, 1.0), v2(1.0, 0.0)]).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!(crossing.distance < 1e-12);
    }

    #[test]
    fn hull_obstacle() {
        let h = SpheroidHull::new(v2(-1.0, 0.0), v2(1.0, 0.0), 4.0).unwrap();
        // a = 2, c = 1, b = sqrt(3)
        let w = gjk_distance(&ConvexObstacle::Hull(h), &ConvexObstacle::point(v2(0.0, 3.0)), 1e-12).unwrap();
        assert!((w.distance - (3.0 - 3f64.sqrt())).abs() < 1e-10);
        let w = gjk_distance(&ConvexObstacle::Hull(h), &ConvexObstacle::point(v2(5.0, 0.0)), 1e-12).unwrap();
        assert!((w.distance - 3.0).abs() < 1e-10);
    }

    #[test]
    fn three_dimensional_boxes() {
        let a = ConvexObstacle::aabb(Vector::<3>::zeros(), Vector::<3>::repeat(1.0)).unwrap();
        let b = ConvexObstacle::aabb(Vector::<3>::new(2.0, 2.0, 2.0), Vector::<3>::repeat(3.0)).unwrap();
        let w = gjk_distance(&a, &b, 1e-12).unwrap();
        assert!((w.distance - 3f64.sqrt()).abs() < 1e-12);
        let c = ConvexObstacle::ball(Vector::<3>::new(0.5, 0.5, 3.0), 1.0).unwrap();
        let w = gjk_distance(&a, &c, 1e-12).unwrap();
        assert!((w.distance - 1.0).abs() < 1e-10);
    }

    #[test]
    fn invalid_tolerance() {
        let p = ConvexObstacle::point(v2(0.0, 0.0));
        assert!(gjk_distance(&p, &p, 0.0).is_err());
    }
}
