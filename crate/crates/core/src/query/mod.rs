//! Certified proximity queries: minimum distance, tolerance verification and
//! collision detection, against convex obstacles or other curves.

mod search;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Vector};
use crate::distance::ConvexObstacle;
use crate::error::{Error, Result};
use search::{CurveCurve, CurveObstacle, Mode, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QueryConfig {
    /// Absolute gap between the certified bounds at which a search stops.
    pub epsilon: f64,
    pub max_iterations: usize,
    pub record_trace: bool,
}

impl Default for QueryConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-10,
            max_iterations: 1_000_000,
            record_trace: false,
        }
    }
}

impl QueryConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        Self {
            epsilon,
            ..Self::default()
        }
    }

    pub fn traced(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// Global bounds after a branch-and-bound iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult<const D: usize> {
    /// Certified lower bound on the minimum distance.
    pub lower: f64,
    /// Distance actually attained by `witness_points`.
    pub upper: f64,
    /// Curve parameter of the first witness, and of the second one for curve pairs.
    pub witness_params: (f64, Option<f64>),
    pub witness_points: (Vector<D>, Vector<D>),
    pub iterations: usize,
    pub converged: bool,
    pub trace: Option<Vec<TracePoint>>,
}

impl<const D: usize> QueryResult<D> {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    fn from_outcome(out: Outcome<D>) -> Self {
        Self {
            lower: out.lower,
            upper: out.upper,
            witness_params: out.best.params,
            witness_points: (out.best.point_a, out.best.point_b),
            iterations: out.iterations,
            converged: out.decision.is_some(),
            trace: out.trace,
        }
    }
}

/// Outcome of a tolerance or collision predicate, with the bounds it stopped at.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    /// `None` when the iteration budget ran out first.
    pub verdict: Option<bool>,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    pub trace: Option<Vec<TracePoint>>,
}

impl Decision {
    fn new<const D: usize>(out: Outcome<D>, negate: bool) -> Self {
        Self {
            verdict: out.decision.map(|v| v != negate),
            lower: out.lower,
            upper: out.upper,
            iterations: out.iterations,
            trace: out.trace,
        }
    }

    /// The verdict, or [`Error::Indeterminate`] with the final bounds.
    pub fn into_result(self) -> Result<bool> {
        self.verdict.ok_or(Error::Indeterminate {
            lower: self.lower,
            upper: self.upper,
            iterations: self.iterations,
        })
    }
}

/// What a curve is measured against.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a, const D: usize> {
    Obstacle(&'a ConvexObstacle<D>),
    Curve(&'a Curve<D>),
}

fn run<const D: usize>(curve: &Curve<D>, target: Target<'_, D>, cfg: &QueryConfig, mode: Mode) -> Result<Outcome<D>> {
    match target {
        Target::Obstacle(o) => search::run(&CurveObstacle::new(curve, o, cfg), cfg, mode),
        Target::Curve(other) => search::run(&CurveCurve::new(curve, other, cfg), cfg, mode),
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("tolerance must be positive, got {delta}")))
    }
}

/// ε-suboptimal minimum distance between `curve` and `target`.
///
/// A search that exhausts `max_iterations` still returns valid bounds, with
/// `converged` unset.
pub fn min_distance_to<const D: usize>(
    curve: &Curve<D>,
    target: Target<'_, D>,
    cfg: &QueryConfig,
) -> Result<QueryResult<D>> {
    run(curve, target, cfg, Mode::MinDistance).map(QueryResult::from_outcome)
}

/// Decides whether the distance to `target` exceeds `delta`, stopping as soon as either answer is certain.
pub fn tolerance_decision<const D: usize>(
    curve: &Curve<D>,
    target: Target<'_, D>,
    delta: f64,
    cfg: &QueryConfig,
) -> Result<Decision> {
    check_delta(delta)?;
    run(curve, target, cfg, Mode::Threshold(delta)).map(|o| Decision::new(o, false))
}

/// Decides whether `curve` touches `target`; the verdict is `true` for a collision.
pub fn collision_decision<const D: usize>(
    curve: &Curve<D>,
    target: Target<'_, D>,
    cfg: &QueryConfig,
) -> Result<Decision> {
    run(curve, target, cfg, Mode::Threshold(0.0)).map(|o| Decision::new(o, true))
}

pub fn min_distance<const D: usize>(
    curve: &Curve<D>,
    obstacle: &ConvexObstacle<D>,
    cfg: &QueryConfig,
) -> Result<QueryResult<D>> {
    min_distance_to(curve, Target::Obstacle(obstacle), cfg)
}

pub fn min_distance_curves<const D: usize>(a: &Curve<D>, b: &Curve<D>, cfg: &QueryConfig) -> Result<QueryResult<D>> {
    min_distance_to(a, Target::Curve(b), cfg)
}

/// `true` iff the distance from `curve` to `obstacle` is certified above `delta`.
///
/// `false` means some curve point lies within `delta + epsilon`.
pub fn tolerance_verify<const D: usize>(
    curve: &Curve<D>,
    obstacle: &ConvexObstacle<D>,
    delta: f64,
    cfg: &QueryConfig,
) -> Result<bool> {
    tolerance_decision(curve, Target::Obstacle(obstacle), delta, cfg)?.into_result()
}

pub fn tolerance_verify_curves<const D: usize>(
    a: &Curve<D>,
    b: &Curve<D>,
    delta: f64,
    cfg: &QueryConfig,
) -> Result<bool> {
    tolerance_decision(a, Target::Curve(b), delta, cfg)?.into_result()
}

/// `true` when some curve point is within `epsilon` of the obstacle.
pub fn collision_detect<const D: usize>(
    curve: &Curve<D>,
    obstacle: &ConvexObstacle<D>,
    cfg: &QueryConfig,
) -> Result<bool> {
    collision_decision(curve, Target::Obstacle(obstacle), cfg)?.into_result()
}

pub fn collision_detect_curves<const D: usize>(a: &Curve<D>, b: &Curve<D>, cfg: &QueryConfig) -> Result<bool> {
    collision_decision(a, Target::Curve(b), cfg)?.into_result()
}
