//! Benchmark suites reporting medians and spreads of wall time and iteration counts.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::fixtures::{self, unit_f64, Fixture, FixtureTarget};
use super::{median, std_dev};
use crate::curve::{Curve, Vector};
use crate::distance::ConvexObstacle;
use crate::error::Result;
use crate::quadrature::QuadratureConfig;
use crate::query::{collision_decision, min_distance_to, tolerance_decision, QueryConfig, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Arclength,
    CurvePoint,
    CurvePolygon,
    CurveCurve,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Arclength => "arclength",
            Suite::CurvePoint => "curve-point",
            Suite::CurvePolygon => "curve-polygon",
            Suite::CurveCurve => "curve-curve",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub suite: String,
    pub instance: String,
    pub algorithm: String,
    /// Absent when timing is disabled.
    pub median_time_ns: Option<f64>,
    pub std_time_ns: Option<f64>,
    /// Absent for suites without an iteration count.
    pub median_iters: Option<f64>,
    pub std_iters: Option<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct BenchOptions {
    pub repetitions: usize,
    pub timing: bool,
    pub instance: Option<String>,
    pub algorithm: Option<String>,
}

impl BenchOptions {
    fn wants(&self, instance: &str, algorithm: &str) -> bool {
        self.instance.as_deref().is_none_or(|i| i == instance)
            && self.algorithm.as_deref().is_none_or(|a| a == algorithm)
    }
}

pub const MINDIST: &str = "mindist";
pub const TOLERANCE: &str = "tolerance";
pub const COLLIDE: &str = "collide";
pub const CLOSED_FORM: &str = "closed_form_bound";
pub const QUADRATURE: &str = "quadrature_arc_length";

/// Bézier orders of the curve-point suite.
pub const CURVE_POINT_ORDERS: [usize; 9] = [5, 10, 15, 20, 25, 30, 35, 40, 45];
/// Random curves per order in the curve-point suite.
pub const CURVE_POINT_VARIANTS: usize = 8;

pub fn run_bench(suite: Suite, opts: &BenchOptions, cfg: &QueryConfig) -> Result<Vec<BenchRow>> {
    match suite {
        Suite::Arclength => arclength(opts),
        Suite::CurvePoint => {
            let mut rows = Vec::new();
            for order in CURVE_POINT_ORDERS {
                let name = format!("bezier-{order}");
                let variants = curve_point_instances(order);
                let cases: Vec<(&Curve<2>, Target<'_, 2>)> =
                    variants.iter().map(|(c, o)| (c, Target::Obstacle(o))).collect();
                rows.extend(query_rows(suite, &name, &cases, opts, cfg)?);
            }
            Ok(rows)
        }
        Suite::CurvePolygon | Suite::CurveCurve => {
            let mut rows = Vec::new();
            for f in fixtures::all() {
                let is_pair = matches!(f.target, FixtureTarget::Curve(_));
                if is_pair != (suite == Suite::CurveCurve) {
                    continue;
                }
                rows.extend(fixture_rows(suite, &f, opts, cfg)?);
            }
            Ok(rows)
        }
    }
}

fn fixture_rows(suite: Suite, f: &Fixture, opts: &BenchOptions, cfg: &QueryConfig) -> Result<Vec<BenchRow>> {
    query_rows(suite, f.name, &[(&f.curve, f.target())], opts, cfg)
}

/// Random Bézier curves in the unit square against a point outside it.
pub fn curve_point_instances(order: usize) -> Vec<(Curve<2>, ConvexObstacle<2>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
    (0..CURVE_POINT_VARIANTS)
        .map(|_| {
            let pts = (0..=order)
                .map(|_| Vector::<2>::new(unit_f64(&mut rng), unit_f64(&mut rng)))
                .collect();
            let p = Vector::<2>::new(1.2 + unit_f64(&mut rng), unit_f64(&mut rng));
            (Curve::bezier_unit(pts).expect("random curve"), ConvexObstacle::point(p))
        })
        .collect()
}

fn summarize(
    suite: Suite,
    instance: &str,
    algorithm: &str,
    times: &mut [f64],
    iters: Option<&mut [f64]>,
    timing: bool,
) -> BenchRow {
    let (median_iters, std_iters) = match iters {
        Some(it) => (Some(median(it)), Some(std_dev(it))),
        None => (None, None),
    };
    BenchRow {
        suite: suite.name().into(),
        instance: instance.into(),
        algorithm: algorithm.into(),
        median_time_ns: timing.then(|| median(times)),
        std_time_ns: timing.then(|| std_dev(times)),
        median_iters,
        std_iters,
    }
}

/// One row per query kind over `cases`, cycling through them `repetitions` times.
fn query_rows(
    suite: Suite,
    instance: &str,
    cases: &[(&Curve<2>, Target<'_, 2>)],
    opts: &BenchOptions,
    cfg: &QueryConfig,
) -> Result<Vec<BenchRow>> {
    if ![MINDIST, TOLERANCE, COLLIDE].iter().any(|a| opts.wants(instance, a)) {
        return Ok(Vec::new());
    }
    let reps = if opts.timing {
        opts.repetitions.max(1)
    } else {
        cases.len()
    };
    // tolerance queries use half the certified distance
    let deltas = cases
        .iter()
        .map(|(c, t)| min_distance_to(c, *t, cfg).map(|r| 0.5 * r.lower))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    for algorithm in [MINDIST, TOLERANCE, COLLIDE] {
        if !opts.wants(instance, algorithm) {
            continue;
        }
        let mut times = Vec::with_capacity(reps);
        let mut iters = Vec::with_capacity(reps);
        for rep in 0..reps {
            let k = rep % cases.len();
            let (curve, target) = cases[k];
            let start = Instant::now();
            let n = match algorithm {
                MINDIST => min_distance_to(curve, target, cfg)?.iterations,
                TOLERANCE => tolerance_decision(curve, target, deltas[k], cfg)?.iterations,
                _ => collision_decision(curve, target, cfg)?.iterations,
            };
            times.push(start.elapsed().as_nanos() as f64);
            iters.push(n as f64);
        }
        rows.push(summarize(suite, instance, algorithm, &mut times, Some(&mut iters), opts.timing));
    }
    Ok(rows)
}

/// Evaluations per timed batch, so clock overhead does not swamp short calls.
const BATCH: usize = 16;

fn arclength(opts: &BenchOptions) -> Result<Vec<BenchRow>> {
    let intervals = fixtures::arc_length_intervals();
    let quad = QuadratureConfig::default();
    let reps = opts.repetitions.max(1);
    let mut rows = Vec::new();
    for (name, curve) in fixtures::arc_length_curves() {
        for algorithm in [CLOSED_FORM, QUADRATURE] {
            if !opts.wants(name, algorithm) {
                continue;
            }
            let mut times = Vec::with_capacity(reps);
            for rep in 0..if opts.timing { reps } else { 0 } {
                let q = intervals[rep % intervals.len()];
                let start = Instant::now();
                for _ in 0..BATCH {
                    let v = if algorithm == CLOSED_FORM {
                        curve.arc_length_upper_bound(black_box(q))?
                    } else {
                        curve.arc_length(black_box(q), &quad)?
                    };
                    black_box(v);
                }
                times.push(start.elapsed().as_nanos() as f64 / BATCH as f64);
            }
            rows.push(summarize(Suite::Arclength, name, algorithm, &mut times, None, opts.timing));
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "suite,instance,algorithm,median_time_ns,std_time_ns,median_iters,std_iters";

pub fn rows_csv(rows: &[BenchRow]) -> String {
    let f = |x: Option<f64>| x.map(|v| format!("{v:.1}")).unwrap_or_default();
    let g = |x: Option<f64>| x.map(|v| format!("{v}")).unwrap_or_default();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.suite,
            r.instance,
            r.algorithm,
            f(r.median_time_ns),
            f(r.std_time_ns),
            g(r.median_iters),
            g(r.std_iters)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_selection() {
        let opts = BenchOptions {
            repetitions: 3,
            timing: true,
            instance: Some("cubic".into()),
            algorithm: Some(CLOSED_FORM.into()),
        };
        let rows = run_bench(Suite::Arclength, &opts, &QueryConfig::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].median_time_ns.unwrap() > 0.0);
        let csv = rows_csv(&rows);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with(CSV_HEADER));
    }

    #[test]
    fn untimed_rows_are_reproducible() {
        let opts = BenchOptions {
            repetitions: 5,
            timing: false,
            instance: Some("bezier-5".into()),
            algorithm: None,
        };
        let cfg = QueryConfig::default();
        let a = rows_csv(&run_bench(Suite::CurvePoint, &opts, &cfg).unwrap());
        let b = rows_csv(&run_bench(Suite::CurvePoint, &opts, &cfg).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 4);
        assert!(a.lines().nth(1).unwrap().starts_with("curve-point,bezier-5,mindist,,,"));
    }
}
