//! Convex enclosures of curve segments.
//!
//! A segment over `[α, β]` lies inside the set of points whose distances to
//! `ψ(α)` and `ψ(β)` sum to at most the arc-length bound `u`. In the plane that
//! set is an ellipse with foci at the endpoint images, in higher dimensions a
//! prolate spheroid, and on the line an interval.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveSegment, Vector};
use crate::error::{Error, Result};

/// Focal separation below which the hull is treated as a ball.
pub const COINCIDENT_FOCI: f64 = 1e-12;

/// Relative shortfall of the bound against the chord that is absorbed as roundoff.
pub const CHORD_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpheroidHull<const D: usize> {
    #[serde(with = "crate::io::vector")]
    pub focus_a: Vector<D>,
    #[serde(with = "crate::io::vector")]
    pub focus_b: Vector<D>,
    pub major_length: f64,
}

impl<const D: usize> SpheroidHull<D> {
    /// Builds a hull, clamping `major_length` up to the chord when it falls
    /// short by roundoff and failing when it falls short by more.
    pub fn new(focus_a: Vector<D>, focus_b: Vector<D>, major_length: f64) -> Result<Self> {
        let chord = (focus_a - focus_b).norm();
        let mut major = major_length;
        if major < chord {
            if chord - major <= CHORD_CLAMP * major.max(1.0) {
                log::debug!("clamping hull major length {major} up to chord {chord}");
                major = chord;
            } else {
                return Err(Error::BrokenArcLengthBound {
                    major: major_length,
                    chord,
                });
            }
        }
        Ok(Self {
            focus_a,
            focus_b,
            major_length: major,
        })
    }

    /// Hull of a curve segment: foci at the endpoint images, major length `u(Q)`.
    pub fn of_segment(segment: &CurveSegment<'_, D>) -> Result<Self> {
        Self::new(
            segment.start(),
            segment.end(),
            segment.arc_length_upper_bound()?,
        )
    }

    pub fn center(&self) -> Vector<D> {
        (self.focus_a + self.focus_b) * 0.5
    }

    pub fn semi_major(&self) -> f64 {
        self.major_length / 2.0
    }

    /// Half the distance between the foci.
    pub fn focal_half_distance(&self) -> f64 {
        (self.focus_a - self.focus_b).norm() / 2.0
    }

    pub fn semi_minor(&self) -> f64 {
        let a = self.semi_major();
        let c = self.focal_half_distance();
        ((a - c) * (a + c)).max(0.0).sqrt()
    }

    /// Unit major axis; the first canonical axis when the foci coincide.
    pub fn axis(&self) -> Vector<D> {
        let d = self.focus_b - self.focus_a;
        let n = d.norm();
        if n < COINCIDENT_FOCI {
            let mut e = Vector::<D>::zeros();
            e[0] = 1.0;
            e
        } else {
            d / n
        }
    }

    pub fn is_ball(&self) -> bool {
        (self.focus_a - self.focus_b).norm() < COINCIDENT_FOCI
    }

    pub fn contains(&self, x: &Vector<D>, slack: f64) -> bool {
        (self.focus_a - x).norm() + (x - self.focus_b).norm() <= self.major_length + slack
    }

    /// Farthest point of the hull along `direction`.
    pub fn support(&self, direction: &Vector<D>) -> Result<Vector<D>> {
        let norm = direction.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroDirection);
        }
        Ok(self.support_unchecked(direction))
    }

    pub(crate) fn support_unchecked(&self, direction: &Vector<D>) -> Vector<D> {
        let m = self.center();
        let a = self.semi_major();
        if self.is_ball() {
            return m + direction * (a / direction.norm());
        }
        let e = self.axis();
        let b = self.semi_minor();
        let along = e.dot(direction);
        let across = direction - e * along;
        let denom = (a * a * along * along + b * b * across.norm_squared()).sqrt();
        if denom == 0.0 {
            // flat hull seen edge-on: every point of the segment is a maximiser
            return m;
        }
        m + (e * (a * a * along) + across * (b * b)) / denom
    }
}
