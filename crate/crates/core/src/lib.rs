//! Certified proximity queries for parametric curves.
//!
//! Given a curve `ψ: I → ℝᴰ` and a convex obstacle (or a second curve), the
//! query functions in [`query`] compute the minimum separating distance to a
//! requested absolute accuracy, decide whether the separation exceeds a
//! safety margin, or detect contact. Each sub-interval of the domain is
//! enclosed in a spheroid whose foci are the endpoint images and whose major
//! axis is the arc-length bound `sqrt(|Q| ∫_Q ψ'ᵀψ')`; GJK distances to those
//! spheroids bound the answer from below, midpoint evaluations from above,
//! and a best-first bisection search closes the gap.

pub mod curve;
pub mod distance;
pub mod error;
pub mod harness;
pub mod hull;
pub mod interval;
pub mod io;
pub mod oracle;
pub mod quadrature;
pub mod query;

pub use curve::{Curve, CurveSegment, CustomCurve, TrigTerm, Vector};
pub use distance::{gjk_distance, ConvexObstacle, DistanceWitness};
pub use error::{Error, Result};
pub use hull::SpheroidHull;
pub use interval::Interval;
pub use query::{
    collision_detect, collision_detect_curves, min_distance, min_distance_curves,
    tolerance_verify, tolerance_verify_curves, QueryConfig, QueryResult,
};
