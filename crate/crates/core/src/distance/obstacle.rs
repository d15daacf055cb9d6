use crate::curve::Vector;
use crate::error::{Error, Result};
use crate::hull::SpheroidHull;

/// Anything that can answer "farthest point in this direction".
pub trait SupportMap<const D: usize> {
    /// Farthest point along `direction`; `direction` is nonzero.
    fn support_point(&self, direction: &Vector<D>) -> Vector<D>;
}

/// A compact convex set the queries can measure against.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexObstacle<const D: usize> {
    Point(Vector<D>),
    /// Convex hull of the listed vertices.
    Polytope(Vec<Vector<D>>),
    Ball { center: Vector<D>, radius: f64 },
    Hull(SpheroidHull<D>),
}

impl<const D: usize> ConvexObstacle<D> {
    pub fn point(p: Vector<D>) -> Self {
        ConvexObstacle::Point(p)
    }

    pub fn polytope(vertices: Vec<Vector<D>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidObstacle("polytope needs at least one vertex".into()));
        }
        if vertices.iter().any(|v| v.iter().any(|x| !x.is_finite())) {
            return Err(Error::InvalidObstacle("non-finite vertex".into()));
        }
        Ok(ConvexObstacle::Polytope(vertices))
    }

    pub fn ball(center: Vector<D>, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::InvalidObstacle(format!("ball radius {radius}")));
        }
        Ok(ConvexObstacle::Ball { center, radius })
    }

    /// Axis-aligned box given by two opposite corners.
    pub fn aabb(min: Vector<D>, max: Vector<D>) -> Result<Self> {
        let corners = (0..1usize << D)
            .map(|mask| {
                Vector::<D>::from_fn(|i, _| if mask >> i & 1 == 1 { max[i] } else { min[i] })
            })
            .collect();
        Self::polytope(corners)
    }

    /// Farthest point along `direction`. Polytope ties go to the lowest vertex index.
    pub fn support(&self, direction: &Vector<D>) -> Result<Vector<D>> {
        let n = direction.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroDirection);
        }
        Ok(self.support_point(direction))
    }

    /// Some point of the set, used to seed GJK.
    pub fn interior_hint(&self) -> Vector<D> {
        match self {
            ConvexObstacle::Point(p) => *p,
            ConvexObstacle::Polytope(vs) => vs[0],
            ConvexObstacle::Ball { center, .. } => *center,
            ConvexObstacle::Hull(h) => h.center(),
        }
    }

    pub fn translated(&self, by: &Vector<D>) -> Self {
        match self {
            ConvexObstacle::Point(p) => ConvexObstacle::Point(p + by),
            ConvexObstacle::Polytope(vs) => {
                ConvexObstacle::Polytope(vs.iter().map(|v| v + by).collect())
            }
            ConvexObstacle::Ball { center, radius } => ConvexObstacle::Ball {
                center: center + by,
                radius: *radius,
            },
            ConvexObstacle::Hull(h) => ConvexObstacle::Hull(SpheroidHull {
                focus_a: h.focus_a + by,
                focus_b: h.focus_b + by,
                major_length: h.major_length,
            }),
        }
    }
}

impl<const D: usize> SupportMap<D> for ConvexObstacle<D> {
    fn support_point(&self, direction: &Vector<D>) -> Vector<D> {
        match self {
            ConvexObstacle::Point(p) => *p,
            ConvexObstacle::Polytope(vs) => {
                let mut best = vs[0];
                let mut best_dot = best.dot(direction);
                for v in &vs[1..] {
                    let d = v.dot(direction);
                    if d > best_dot {
                        best = *v;
                        best_dot = d;
                    }
                }
                best
            }
            ConvexObstacle::Ball { center, radius } => {
                center + direction * (*radius / direction.norm())
            }
            ConvexObstacle::Hull(h) => h.support_unchecked(direction),
        }
    }
}

impl<const D: usize> SupportMap<D> for SpheroidHull<D> {
    fn support_point(&self, direction: &Vector<D>) -> Vector<D> {
        self.support_unchecked(direction)
    }
}

impl<const D: usize> SupportMap<D> for Vector<D> {
    fn support_point(&self, _direction: &Vector<D>) -> Vector<D> {
        *self
    }
}
