//! Best-first interval branch-and-bound shared by all query kinds.
//!
//! The open collection is a min-heap keyed by node lower bound, with ties
//! served in insertion order. The global upper bound is the smallest upper
//! bound ever seen (each one is the distance of an actual curve point); the
//! global lower bound is the heap top, since the heap always covers the whole
//! domain. Children inherit their parent's lower bound when it is larger,
//! which keeps the global lower bound monotone.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::curve::{Curve, CurveSegment, Vector};
use crate::distance::{hull_lower_bound, hulls_lower_bound, ConvexObstacle, DistanceWitness};
use crate::error::Result;
use crate::hull::SpheroidHull;
use crate::interval::Interval;

use super::{QueryConfig, TracePoint};

/// Bounds computed for one region of parameter space.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Evaluation<const D: usize> {
    pub lb: f64,
    pub ub: f64,
    pub params: (f64, Option<f64>),
    pub point_a: Vector<D>,
    pub point_b: Vector<D>,
}

pub(crate) trait Subproblem<const D: usize> {
    type Region: Copy;

    fn root(&self) -> Self::Region;

    fn evaluate(&self, region: Self::Region) -> Result<Evaluation<D>>;

    /// `None` once the region is at the refinement floor.
    fn split(&self, region: Self::Region) -> Option<(Self::Region, Self::Region)>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Mode {
    /// Close the gap to epsilon.
    MinDistance,
    /// Decide whether the distance exceeds the threshold.
    Threshold(f64),
}

#[derive(Debug, Clone)]
pub(crate) struct Outcome<const D: usize> {
    pub lower: f64,
    pub upper: f64,
    pub best: Evaluation<D>,
    pub iterations: usize,
    /// `Some(verdict)` for threshold searches that reached a decision; for
    /// distance searches `Some(true)` marks convergence.
    pub decision: Option<bool>,
    pub trace: Option<Vec<TracePoint>>,
}

struct Node<R> {
    region: R,
    lb: f64,
    ub: f64,
    seq: u64,
}

impl<R> PartialEq for Node<R> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<R> Eq for Node<R> {}

impl<R> PartialOrd for Node<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<R> Ord for Node<R> {
    // reversed so that BinaryHeap pops the smallest (lb, seq)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .lb
            .total_cmp(&self.lb)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

pub(crate) fn run<const D: usize, P: Subproblem<D>>(
    problem: &P,
    cfg: &QueryConfig,
    mode: Mode,
) -> Result<Outcome<D>> {
    cfg.validate()?;
    let eps = cfg.epsilon;
    let mut trace = cfg.record_trace.then(Vec::new);

    let root = problem.root();
    let first = problem.evaluate(root)?;
    let mut best = first;
    let mut upper = first.ub;
    let mut seq = 0u64;
    let mut heap = BinaryHeap::new();
    heap.push(Node {
        region: root,
        lb: first.lb.min(first.ub),
        ub: first.ub,
        seq,
    });
    let mut iterations = 0usize;
    let mut lower = heap.peek().map_or(0.0, |n| n.lb);
    if let Some(t) = trace.as_mut() {
        t.push(TracePoint { iteration: 0, lower, upper });
    }

    loop {
        let keep_going = match mode {
            Mode::MinDistance => upper - lower > eps,
            Mode::Threshold(delta) => upper - delta > eps,
        };
        if !keep_going {
            let decision = match mode {
                Mode::MinDistance => true,
                Mode::Threshold(_) => false,
            };
            return Ok(Outcome {
                lower: lower.min(upper),
                upper,
                best,
                iterations,
                decision: Some(decision),
                trace,
            });
        }
        if iterations >= cfg.max_iterations {
            return Ok(Outcome {
                lower: lower.min(upper),
                upper,
                best,
                iterations,
                decision: None,
                trace,
            });
        }

        let node = heap.pop().expect("open collection never empties");
        match problem.split(node.region) {
            Some((left, right)) => {
                for region in [left, right] {
                    let ev = problem.evaluate(region)?;
                    if ev.ub < upper {
                        upper = ev.ub;
                        best = ev;
                    }
                    seq += 1;
                    heap.push(Node {
                        region,
                        lb: ev.lb.max(node.lb).min(ev.ub),
                        ub: ev.ub,
                        seq,
                    });
                }
            }
            None => {
                // refinement floor: accept the midpoint value for this sliver
                seq += 1;
                heap.push(Node {
                    region: node.region,
                    lb: node.ub,
                    ub: node.ub,
                    seq,
                });
            }
        }
        iterations += 1;
        lower = heap.peek().map_or(0.0, |n| n.lb);
        if let Some(t) = trace.as_mut() {
            t.push(TracePoint { iteration: iterations, lower, upper });
        }
        if let Mode::Threshold(delta) = mode {
            if lower > delta {
                return Ok(Outcome {
                    lower: lower.min(upper),
                    upper,
                    best,
                    iterations,
                    decision: Some(true),
                    trace,
                });
            }
        }
    }
}

fn gjk_tolerance(cfg: &QueryConfig) -> f64 {
    (cfg.epsilon * 1e-2).min(crate::distance::DEFAULT_TOLERANCE)
}

fn refinement_floor(domain: Interval) -> f64 {
    64.0 * f64::EPSILON * domain.length()
}

pub(crate) struct CurveObstacle<'a, const D: usize> {
    curve: &'a Curve<D>,
    obstacle: &'a ConvexObstacle<D>,
    floor: f64,
    tol: f64,
}

impl<'a, const D: usize> CurveObstacle<'a, D> {
    pub fn new(curve: &'a Curve<D>, obstacle: &'a ConvexObstacle<D>, cfg: &QueryConfig) -> Self {
        Self {
            curve,
            obstacle,
            floor: refinement_floor(curve.domain()),
            tol: gjk_tolerance(cfg),
        }
    }
}

impl<const D: usize> Subproblem<D> for CurveObstacle<'_, D> {
    type Region = Interval;

    fn root(&self) -> Interval {
        self.curve.domain()
    }

    fn evaluate(&self, q: Interval) -> Result<Evaluation<D>> {
        let seg = CurveSegment::new(self.curve, q)?;
        let hull = SpheroidHull::of_segment(&seg)?;
        let lb = hull_lower_bound(&hull, self.obstacle, self.tol);
        let (t, x) = seg.midpoint();
        let w: DistanceWitness<D> =
            crate::distance::point_to_obstacle(&x, self.obstacle, self.tol);
        Ok(Evaluation {
            lb,
            ub: w.distance,
            params: (t, None),
            point_a: x,
            point_b: w.point_b,
        })
    }

    fn split(&self, q: Interval) -> Option<(Interval, Interval)> {
        if q.length() < self.floor {
            return None;
        }
        q.bisect().ok()
    }
}

pub(crate) struct CurveCurve<'a, const D: usize> {
    a: &'a Curve<D>,
    b: &'a Curve<D>,
    floor_a: f64,
    floor_b: f64,
    tol: f64,
}

impl<'a, const D: usize> CurveCurve<'a, D> {
    pub fn new(a: &'a Curve<D>, b: &'a Curve<D>, cfg: &QueryConfig) -> Self {
        Self {
            a,
            b,
            floor_a: refinement_floor(a.domain()),
            floor_b: refinement_floor(b.domain()),
            tol: gjk_tolerance(cfg),
        }
    }
}

impl<const D: usize> Subproblem<D> for CurveCurve<'_, D> {
    type Region = (Interval, Interval);

    fn root(&self) -> Self::Region {
        (self.a.domain(), self.b.domain())
    }

    fn evaluate(&self, (q, r): Self::Region) -> Result<Evaluation<D>> {
        let sa = CurveSegment::new(self.a, q)?;
        let sb = CurveSegment::new(self.b, r)?;
        let ha = SpheroidHull::of_segment(&sa)?;
        let hb = SpheroidHull::of_segment(&sb)?;
        let lb = hulls_lower_bound(&ha, &hb, self.tol);
        let (t, x) = sa.midpoint();
        let (s, y) = sb.midpoint();
        Ok(Evaluation {
            lb,
            ub: (x - y).norm(),
            params: (t, Some(s)),
            point_a: x,
            point_b: y,
        })
    }

    fn split(&self, (q, r): Self::Region) -> Option<(Self::Region, Self::Region)> {
        let can_q = q.length() >= self.floor_a;
        let can_r = r.length() >= self.floor_b;
        let split_first = match (can_q, can_r) {
            (false, false) => return None,
            (true, false) => true,
            (false, true) => false,
            (true, true) => q.length() >= r.length(),
        };
        if split_first {
            let (q1, q2) = q.bisect().ok()?;
            Some(((q1, r), (q2, r)))
        } else {
            let (r1, r2) = r.bisect().ok()?;
            Some(((q, r1), (q, r2)))
        }
    }
}
