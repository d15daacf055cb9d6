//! Lower and upper bounds on the separation between a curve segment and an obstacle or a second segment.
//!
//! The lower bound measures from the segment's hull; the upper bound measures
//! from the image of the segment midpoint, which is a point of the curve.

use super::gjk::{gjk, DistanceWitness, DEFAULT_TOLERANCE};
use super::obstacle::{ConvexObstacle, SupportMap};
use crate::curve::CurveSegment;
use crate::error::Result;
use crate::hull::SpheroidHull;

/// Certified lower bound on the distance from `hull` to `obstacle`.
///
/// A GJK run that hits its iteration cap still yields a valid (looser) bound.
pub fn hull_lower_bound<const D: usize>(
    hull: &SpheroidHull<D>,
    obstacle: &ConvexObstacle<D>,
    tol: f64,
) -> f64 {
    gjk(hull, obstacle, hull.center() - obstacle.interior_hint(), tol).lower_bound
}

/// Certified lower bound on the distance between two hulls.
pub fn hulls_lower_bound<const D: usize>(a: &SpheroidHull<D>, b: &SpheroidHull<D>, tol: f64) -> f64 {
    gjk(a, b, a.center() - b.center(), tol).lower_bound
}

/// Lower bound on the separation between the segment and `obstacle`.
pub fn d_lb<const D: usize>(segment: &CurveSegment<'_, D>, obstacle: &ConvexObstacle<D>) -> Result<f64> {
    let hull = SpheroidHull::of_segment(segment)?;
    Ok(hull_lower_bound(&hull, obstacle, DEFAULT_TOLERANCE))
}

/// Distance from the segment's midpoint image to `obstacle`; `point_a` is that image.
pub fn d_ub<const D: usize>(
    segment: &CurveSegment<'_, D>,
    obstacle: &ConvexObstacle<D>,
) -> Result<DistanceWitness<D>> {
    let (_, x) = segment.midpoint();
    Ok(point_to_obstacle(&x, obstacle, DEFAULT_TOLERANCE))
}

pub(crate) fn point_to_obstacle<const D: usize, O: SupportMap<D> + ?Sized>(
    x: &crate::curve::Vector<D>,
    obstacle: &O,
    tol: f64,
) -> DistanceWitness<D> {
    let seed = x - obstacle.support_point(x);
    gjk(x, obstacle, seed, tol).witness
}

pub fn d_lb_curves<const D: usize>(a: &CurveSegment<'_, D>, b: &CurveSegment<'_, D>) -> Result<f64> {
    let ha = SpheroidHull::of_segment(a)?;
    let hb = SpheroidHull::of_segment(b)?;
    Ok(hulls_lower_bound(&ha, &hb, DEFAULT_TOLERANCE))
}

/// Distance between the two segments' midpoint images.
pub fn d_ub_curves<const D: usize>(a: &CurveSegment<'_, D>, b: &CurveSegment<'_, D>) -> DistanceWitness<D> {
    let (_, x) = a.midpoint();
    let (_, y) = b.midpoint();
    DistanceWitness {
        distance: (x - y).norm(),
        point_a: x,
        point_b: y,
    }
}
