//! Scene files: named curves and obstacles plus a list of queries.
//!
//! ```json
//! {
//!   "curves": {"circle": {"dimension": 2, "domain": [0, 6.283185307179586], "basis": "trig",
//!              "terms": [{"dim": 0, "amplitude_cos": 1, "frequency": 1}, {"dim": 1, "amplitude_sin": 1, "frequency": 1}]}},
//!   "obstacles": {"p": {"type": "point", "p": [2, 0]}},
//!   "queries": [{"kind": "mindist", "subject": "circle", "target": "p"},
//!               {"kind": "tolerance", "subject": "circle", "target": "p", "delta": 0.5}]
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::distance::ConvexObstacle;
use crate::error::{Error, Result};
use crate::io::{from_json, CurveDoc, ObstacleDoc};
use crate::query::{self, QueryConfig, Target, TracePoint};
use crate::with_dimension;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Mindist,
    Tolerance,
    Collide,
}

impl QueryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::Mindist => "mindist",
            QueryKind::Tolerance => "tolerance",
            QueryKind::Collide => "collide",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneQuery {
    pub kind: QueryKind,
    pub subject: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    #[serde(default)]
    pub curves: BTreeMap<String, CurveDoc>,
    #[serde(default)]
    pub obstacles: BTreeMap<String, ObstacleDoc>,
    #[serde(default)]
    pub queries: Vec<SceneQuery>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NotConverged,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryReport {
    pub index: usize,
    pub kind: QueryKind,
    pub subject: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub status: Status,
    /// Tolerance: distance exceeds delta. Collide: curves touch.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_params: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_points: Option<[Vec<f64>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ns: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub trace: Option<Vec<TracePoint>>,
    #[serde(skip)]
    pub failure: Option<Error>,
}

impl Scene {
    pub fn parse(text: &str) -> Result<Self> {
        let scene: Scene = from_json(text)?;
        scene.validate()?;
        Ok(scene)
    }

    /// Checks that names resolve and that `delta` accompanies exactly the tolerance queries.
    pub fn validate(&self) -> Result<()> {
        for name in self.curves.keys() {
            if self.obstacles.contains_key(name) {
                return Err(Error::Parse(format!("name `{name}` is both a curve and an obstacle")));
            }
        }
        for (i, q) in self.queries.iter().enumerate() {
            if !self.curves.contains_key(&q.subject) {
                return Err(Error::Parse(format!("query {i}: unknown curve `{}`", q.subject)));
            }
            if !self.curves.contains_key(&q.target) && !self.obstacles.contains_key(&q.target) {
                return Err(Error::Parse(format!("query {i}: unknown target `{}`", q.target)));
            }
            match (q.kind, q.delta) {
                (QueryKind::Tolerance, None) => {
                    return Err(Error::Parse(format!("query {i}: tolerance query needs `delta`")))
                }
                (QueryKind::Mindist | QueryKind::Collide, Some(_)) => {
                    return Err(Error::Parse(format!("query {i}: `delta` only applies to tolerance queries")))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn target_dimension(&self, name: &str) -> usize {
        match self.curves.get(name) {
            Some(c) => c.dimension,
            None => self.obstacles[name].dimension(),
        }
    }

    /// Runs every query in order. Per-query failures are recorded in the report.
    pub fn run(&self, cfg: &QueryConfig, timing: bool) -> Vec<QueryReport> {
        self.queries
            .iter()
            .enumerate()
            .map(|(index, q)| {
                let mut report = QueryReport {
                    index,
                    kind: q.kind,
                    subject: q.subject.clone(),
                    target: q.target.clone(),
                    delta: q.delta,
                    status: Status::Error,
                    verdict: None,
                    lower: None,
                    upper: None,
                    witness_params: None,
                    witness_points: None,
                    iterations: None,
                    time_ns: None,
                    error: None,
                    trace: None,
                    failure: None,
                };
                let dim = self.curves[&q.subject].dimension;
                let outcome = if self.target_dimension(&q.target) != dim {
                    Err(Error::DimensionMismatch {
                        expected: dim,
                        found: self.target_dimension(&q.target),
                    })
                } else {
                    with_dimension!(dim, D => self.run_one::<D>(q, cfg, &mut report))
                };
                if let Err(e) = outcome {
                    report.status = Status::Error;
                    report.error = Some(e.to_string());
                    report.failure = Some(e);
                }
                if !timing {
                    report.time_ns = None;
                }
                report
            })
            .collect()
    }

    fn run_one<const D: usize>(&self, q: &SceneQuery, cfg: &QueryConfig, report: &mut QueryReport) -> Result<()> {
        let subject: Curve<D> = self.curves[&q.subject].to_curve()?;
        let other_curve: Option<Curve<D>>;
        let obstacle: Option<ConvexObstacle<D>>;
        let target = match self.curves.get(&q.target) {
            Some(doc) => {
                other_curve = Some(doc.to_curve()?);
                Target::Curve(other_curve.as_ref().expect("just set"))
            }
            None => {
                obstacle = Some(self.obstacles[&q.target].to_obstacle()?);
                Target::Obstacle(obstacle.as_ref().expect("just set"))
            }
        };
        let start = Instant::now();
        match q.kind {
            QueryKind::Mindist => {
                let r = query::min_distance_to(&subject, target, cfg)?;
                report.time_ns = Some(start.elapsed().as_nanos() as u64);
                report.status = if r.converged { Status::Ok } else { Status::NotConverged };
                report.lower = Some(r.lower);
                report.upper = Some(r.upper);
                let (t, s) = r.witness_params;
                report.witness_params = Some(std::iter::once(t).chain(s).collect());
                report.witness_points = Some([
                    r.witness_points.0.iter().copied().collect(),
                    r.witness_points.1.iter().copied().collect(),
                ]);
                report.iterations = Some(r.iterations);
                report.trace = r.trace;
            }
            QueryKind::Tolerance | QueryKind::Collide => {
                let d = match q.kind {
                    QueryKind::Tolerance => {
                        query::tolerance_decision(&subject, target, q.delta.unwrap_or(f64::NAN), cfg)?
                    }
                    _ => query::collision_decision(&subject, target, cfg)?,
                };
                report.time_ns = Some(start.elapsed().as_nanos() as u64);
                report.status = if d.verdict.is_some() { Status::Ok } else { Status::NotConverged };
                report.verdict = d.verdict;
                report.lower = Some(d.lower);
                report.upper = Some(d.upper);
                report.iterations = Some(d.iterations);
                report.trace = d.trace;
            }
        }
        Ok(())
    }
}

/// 0 when every query succeeded, 2 for invalid input, 3 for an unfinished
/// search, 1 for any other failure.
pub fn exit_code(reports: &[QueryReport]) -> u8 {
    let mut code = 0;
    for r in reports {
        let c = match (&r.status, &r.failure) {
            (Status::Ok, _) => 0,
            (Status::NotConverged, _) => 3,
            (Status::Error, Some(e)) if e.is_input_error() => 2,
            (Status::Error, _) => 1,
        };
        code = code.max(c);
    }
    code
}

fn opt<T: std::fmt::Debug>(x: &Option<T>) -> String {
    x.as_ref().map(|v| format!("{v:?}")).unwrap_or_default()
}

pub fn reports_text(reports: &[QueryReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = write!(out, "[{}] {} {} -> {}", r.index, r.kind.as_str(), r.subject, r.target);
        if let Some(d) = r.delta {
            let _ = write!(out, " (delta {d})");
        }
        match (&r.status, r.kind) {
            (Status::Error, _) => {
                let _ = write!(out, ": error: {}", r.error.as_deref().unwrap_or("unknown"));
            }
            (_, QueryKind::Mindist) => {
                let _ = write!(
                    out,
                    ": distance in [{:?}, {:?}]",
                    r.lower.unwrap_or(f64::NAN),
                    r.upper.unwrap_or(f64::NAN)
                );
            }
            (_, kind) => {
                let answer = match (kind, r.verdict) {
                    (_, None) => "undecided",
                    (QueryKind::Tolerance, Some(true)) => "clear",
                    (QueryKind::Tolerance, Some(false)) => "violated",
                    (_, Some(true)) => "collision",
                    (_, Some(false)) => "no collision",
                };
                let _ = write!(out, ": {answer}");
            }
        }
        if let Some(it) = r.iterations {
            let _ = write!(out, ", {it} iterations");
        }
        if r.status == Status::NotConverged {
            out.push_str(", not converged");
        }
        if let Some(ns) = r.time_ns {
            let _ = write!(out, ", {:.3} ms", ns as f64 * 1e-6);
        }
        out.push('\n');
    }
    out
}

pub fn reports_csv(reports: &[QueryReport]) -> String {
    let mut out = String::from("index,kind,subject,target,delta,status,verdict,lower,upper,iterations,time_ns\n");
    for r in reports {
        let status = match r.status {
            Status::Ok => "ok",
            Status::NotConverged => "not_converged",
            Status::Error => "error",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.index,
            r.kind.as_str(),
            r.subject,
            r.target,
            opt(&r.delta),
            status,
            opt(&r.verdict),
            opt(&r.lower),
            opt(&r.upper),
            opt(&r.iterations),
            opt(&r.time_ns),
        );
    }
    out
}

pub fn reports_json(reports: &[QueryReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = r#"{"dimension": 2, "domain": [0, 6.283185307179586], "basis": "trig",
        "terms": [{"dim": 0, "amplitude_cos": 1, "frequency": 1}, {"dim": 1, "amplitude_sin": 1, "frequency": 1}]}"#;

    fn scene(queries: &str) -> String {
        format!(
            r#"{{"curves": {{"circle": {CIRCLE},
                "line": {{"dimension": 3, "domain": [0, 1], "basis": "bezier", "control_points": [[0,0,0],[1,0,0]]}}}},
               "obstacles": {{"p": {{"type": "point", "p": [2, 0]}}}},
               "queries": {queries}}}"#
        )
    }

    #[test]
    fn runs_queries() {
        let s = Scene::parse(&scene(
            r#"[{"kind": "mindist", "subject": "circle", "target": "p"},
                {"kind": "tolerance", "subject": "circle", "target": "p", "delta": 0.5},
                {"kind": "collide", "subject": "circle", "target": "p"}]"#,
        ))
        .unwrap();
        let r = s.run(&QueryConfig::default(), false);
        assert!((r[0].lower.unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(r[1].verdict, Some(true));
        assert_eq!(r[2].verdict, Some(false));
        assert!(r.iter().all(|q| q.status == Status::Ok && q.time_ns.is_none()));
        let csv = reports_csv(&r);
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn dimension_mismatch_is_per_query() {
        let s = Scene::parse(&scene(r#"[{"kind": "mindist", "subject": "line", "target": "p"}]"#)).unwrap();
        let r = s.run(&QueryConfig::default(), false);
        assert_eq!(r[0].status, Status::Error);
        assert!(r[0].error.as_ref().unwrap().contains("dimension"));
    }

    #[test]
    fn validation() {
        assert!(Scene::parse(&scene(r#"[{"kind": "mindist", "subject": "nope", "target": "p"}]"#)).is_err());
        assert!(Scene::parse(&scene(r#"[{"kind": "tolerance", "subject": "circle", "target": "p"}]"#)).is_err());
        assert!(Scene::parse(&scene(r#"[{"kind": "collide", "subject": "circle", "target": "p", "delta": 1}]"#)).is_err());
        assert!(Scene::parse(&scene(r#"[{"kind": "teleport", "subject": "circle", "target": "p"}]"#)).is_err());
        assert!(Scene::parse("{}").unwrap().queries.is_empty());
    }
}
