//! Trajectory replanning demo: sample random Bézier paths between two points
//! and sort them into colliding, unsafe and feasible.
//!
//! Sampling is reproducible across implementations. Sample `k` draws from
//! ChaCha8 (rand_chacha's `ChaCha8Rng`) seeded with `seed_from_u64(seed)` and
//! switched to stream `k`. Interior control points are drawn in order, each
//! coordinate as `min + (max - min) * u` where `u` is the top 53 bits of the
//! next 64-bit output scaled by 2⁻⁵³.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fixtures::unit_f64;
use crate::curve::{Curve, Vector};
use crate::distance::ConvexObstacle;
use crate::error::{Error, Result};
use crate::io::ObstacleDoc;
use crate::query::{collision_decision, tolerance_decision, QueryConfig, Target};
use crate::with_dimension;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplanSpec {
    pub start: Vec<f64>,
    pub goal: Vec<f64>,
    pub sample_count: usize,
    #[serde(default = "default_order")]
    pub curve_order: usize,
    pub distribution: Distribution,
    #[serde(default)]
    pub obstacles: Vec<ObstacleDoc>,
    pub delta: f64,
}

fn default_order() -> usize {
    5
}

impl ReplanSpec {
    /// A 10 × 6 box crossed left to right, with a wall segment above and a
    /// block below the straight path.
    pub fn demo() -> Self {
        Self {
            start: vec![0.0, 3.0],
            goal: vec![10.0, 3.0],
            sample_count: 1000,
            curve_order: 5,
            distribution: Distribution {
                min: vec![0.0, 0.0],
                max: vec![10.0, 6.0],
                seed: 42,
            },
            obstacles: vec![
                ObstacleDoc::Polytope {
                    vertices: vec![vec![3.0, 4.2], vec![4.0, 4.2], vec![4.0, 6.0], vec![3.0, 6.0]],
                },
                ObstacleDoc::Polytope {
                    vertices: vec![vec![6.0, 0.0], vec![7.5, 0.0], vec![7.5, 1.6], vec![6.0, 1.6]],
                },
            ],
            delta: 0.5,
        }
    }

    pub fn dimension(&self) -> usize {
        self.start.len()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dimension();
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if d == 0 {
            return bad("start point is empty".into());
        }
        if self.goal.len() != d || self.distribution.min.len() != d || self.distribution.max.len() != d {
            return bad(format!("start, goal and box must all have {d} coordinates"));
        }
        if self.sample_count == 0 {
            return bad("sample_count must be at least 1".into());
        }
        if self.curve_order == 0 {
            return bad("curve_order must be at least 1".into());
        }
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return bad(format!("delta must be positive, got {}", self.delta));
        }
        let all = self
            .start
            .iter()
            .chain(&self.goal)
            .chain(&self.distribution.min)
            .chain(&self.distribution.max);
        if all.clone().any(|x| !x.is_finite()) {
            return bad("coordinates must be finite".into());
        }
        if self.distribution.min.iter().zip(&self.distribution.max).any(|(a, b)| a > b) {
            return bad("box min exceeds max".into());
        }
        for (i, o) in self.obstacles.iter().enumerate() {
            if o.dimension() != d {
                return Err(Error::InvalidObstacle(format!(
                    "obstacle {i} has dimension {}, expected {d}",
                    o.dimension()
                )));
            }
        }
        if self.start == self.goal && self.curve_order == 1 {
            return bad("a first-order path between equal endpoints is constant".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Colliding,
    Unsafe,
    Feasible,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub index: usize,
    pub class: Class,
    pub control_points: Vec<Vec<f64>>,
    /// Queries that ran out of iterations and were resolved pessimistically.
    pub undecided: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplanSummary {
    pub samples: usize,
    pub colliding: usize,
    #[serde(rename = "unsafe")]
    pub unsafe_: usize,
    pub feasible: usize,
    pub undecided_queries: usize,
    #[serde(skip)]
    pub details: Vec<Sample>,
}

/// Control points of sample `index`.
pub fn sample_control_points<const D: usize>(spec: &ReplanSpec, index: usize) -> Vec<Vector<D>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.distribution.seed);
    rng.set_stream(index as u64);
    let lo = Vector::<D>::from_column_slice(&spec.distribution.min);
    let hi = Vector::<D>::from_column_slice(&spec.distribution.max);
    let mut pts = Vec::with_capacity(spec.curve_order + 1);
    pts.push(Vector::<D>::from_column_slice(&spec.start));
    for _ in 1..spec.curve_order {
        pts.push(Vector::<D>::from_fn(|i, _| lo[i] + (hi[i] - lo[i]) * unit_f64(&mut rng)));
    }
    pts.push(Vector::<D>::from_column_slice(&spec.goal));
    pts
}

/// The class of `curve`, and whether an undecided query forced the pessimistic answer.
fn classify<const D: usize>(
    curve: &Curve<D>,
    obstacles: &[ConvexObstacle<D>],
    delta: f64,
    cfg: &QueryConfig,
) -> Result<(Class, usize)> {
    for o in obstacles {
        match collision_decision(curve, Target::Obstacle(o), cfg)?.verdict {
            Some(false) => {}
            Some(true) => return Ok((Class::Colliding, 0)),
            None => return Ok((Class::Colliding, 1)),
        }
    }
    for o in obstacles {
        match tolerance_decision(curve, Target::Obstacle(o), delta, cfg)?.verdict {
            Some(true) => {}
            Some(false) => return Ok((Class::Unsafe, 0)),
            None => return Ok((Class::Unsafe, 1)),
        }
    }
    Ok((Class::Feasible, 0))
}

fn run_typed<const D: usize>(spec: &ReplanSpec, cfg: &QueryConfig) -> Result<ReplanSummary> {
    let obstacles = spec
        .obstacles
        .iter()
        .map(ObstacleDoc::to_obstacle::<D>)
        .collect::<Result<Vec<_>>>()?;
    let details = (0..spec.sample_count)
        .into_par_iter()
        .map(|index| {
            let pts = sample_control_points::<D>(spec, index);
            let curve = Curve::bezier_unit(pts.clone())?;
            let (class, undecided) = classify(&curve, &obstacles, spec.delta, cfg)?;
            Ok(Sample {
                index,
                class,
                control_points: pts.iter().map(|p| p.iter().copied().collect()).collect(),
                undecided,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |c: Class| details.iter().filter(|s| s.class == c).count();
    Ok(ReplanSummary {
        samples: spec.sample_count,
        colliding: count(Class::Colliding),
        unsafe_: count(Class::Unsafe),
        feasible: count(Class::Feasible),
        undecided_queries: details.iter().map(|s| s.undecided).sum(),
        details,
    })
}

/// Classifies every sample. `jobs` bounds the worker threads; `None` uses rayon's default.
pub fn run_replan(spec: &ReplanSpec, cfg: &QueryConfig, jobs: Option<usize>) -> Result<ReplanSummary> {
    spec.validate()?;
    cfg.validate()?;
    let work = || with_dimension!(spec.dimension(), D => run_typed::<D>(spec, cfg));
    match jobs {
        None => work(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(work),
    }
}
