//! Static SVG drawings of scenes and replanning results.
//!
//! Output is deterministic: coordinates are printed with three decimals and
//! elements appear in scene order. Points of dimension above two are
//! projected onto their first two coordinates.

use std::fmt::Write as _;

use super::replan::{Class, ReplanSpec, ReplanSummary};
use super::scene::{QueryKind, QueryReport, Scene};
use crate::curve::{Curve, Vector};
use crate::error::Result;
use crate::hull::SpheroidHull;
use crate::interval::Interval;
use crate::io::ObstacleDoc;
use crate::with_dimension;

/// Samples per curve polyline.
pub const CURVE_SAMPLES: usize = 512;

const SIZE: f64 = 640.0;
const PAD: f64 = 20.0;
const PALETTE: [&str; 6] = ["#1f4e79", "#b35900", "#2e7d32", "#6a1b9a", "#00838f", "#5d4037"];

type P = [f64; 2];

enum Shape {
    Polyline { points: Vec<P>, stroke: &'static str, width: f64 },
    Polygon { points: Vec<P> },
    Disc { center: P, radius: f64 },
    Dot { center: P },
    Ellipse { center: P, rx: f64, ry: f64, angle: f64 },
    Dashed { a: P, b: P },
}

/// Collects shapes in world coordinates and writes them scaled to fit.
#[derive(Default)]
struct Canvas {
    shapes: Vec<Shape>,
}

fn project<const D: usize>(v: &Vector<D>) -> P {
    [v[0], if D > 1 { v[1] } else { 0.0 }]
}

fn project_slice(v: &[f64]) -> P {
    [v.first().copied().unwrap_or(0.0), v.get(1).copied().unwrap_or(0.0)]
}

/// Counter-clockwise convex hull (monotone chain).
fn convex_hull(mut pts: Vec<P>) -> Vec<P> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: P, a: P, b: P| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<P> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &P>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

impl Canvas {
    fn curve<const D: usize>(&mut self, curve: &Curve<D>, stroke: &'static str, width: f64) {
        let q = curve.domain();
        let points = (0..CURVE_SAMPLES)
            .map(|i| {
                let t = if i + 1 == CURVE_SAMPLES {
                    q.hi()
                } else {
                    q.lo() + q.length() * i as f64 / (CURVE_SAMPLES - 1) as f64
                };
                project(&curve.point(t))
            })
            .collect();
        self.shapes.push(Shape::Polyline { points, stroke, width });
    }

    fn hull<const D: usize>(&mut self, h: &SpheroidHull<D>) {
        let axis = h.axis();
        self.shapes.push(Shape::Ellipse {
            center: project(&h.center()),
            rx: h.semi_major(),
            ry: h.semi_minor(),
            angle: if D > 1 { axis[1].atan2(axis[0]) } else { 0.0 },
        });
    }

    fn obstacle(&mut self, o: &ObstacleDoc) {
        match o {
            ObstacleDoc::Point { p } => self.shapes.push(Shape::Dot { center: project_slice(p) }),
            ObstacleDoc::Polytope { vertices } => self.shapes.push(Shape::Polygon {
                points: convex_hull(vertices.iter().map(|v| project_slice(v)).collect()),
            }),
            ObstacleDoc::Ball { center, radius } => self.shapes.push(Shape::Disc {
                center: project_slice(center),
                radius: *radius,
            }),
            ObstacleDoc::Hull {
                focus_a,
                focus_b,
                major_length,
            } => {
                let (a, b) = (project_slice(focus_a), project_slice(focus_b));
                let c = 0.5 * ((a[0] - b[0]).hypot(a[1] - b[1]));
                let semi = 0.5 * major_length;
                self.shapes.push(Shape::Ellipse {
                    center: [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])],
                    rx: semi,
                    ry: ((semi - c).max(0.0) * (semi + c)).sqrt(),
                    angle: (b[1] - a[1]).atan2(b[0] - a[0]),
                });
            }
        }
    }

    fn bounds(&self) -> (P, P) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        let mut add = |p: P, r: f64| {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i] - r);
                hi[i] = hi[i].max(p[i] + r);
            }
        };
        for s in &self.shapes {
            match s {
                Shape::Polyline { points, .. } | Shape::Polygon { points } => {
                    points.iter().for_each(|&p| add(p, 0.0))
                }
                Shape::Disc { center, radius } => add(*center, *radius),
                Shape::Dot { center } => add(*center, 0.0),
                Shape::Ellipse { center, rx, .. } => add(*center, *rx),
                Shape::Dashed { a, b } => {
                    add(*a, 0.0);
                    add(*b, 0.0);
                }
            }
        }
        if !(lo[0] <= hi[0]) {
            return ([-1.0, -1.0], [1.0, 1.0]);
        }
        // pad degenerate extents so the scale stays finite
        for i in 0..2 {
            if hi[i] - lo[i] < 1e-9 {
                lo[i] -= 1.0;
                hi[i] += 1.0;
            }
        }
        (lo, hi)
    }

    fn finish(&self, caption: Option<&str>) -> String {
        let (lo, hi) = self.bounds();
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]) * 1.05;
        let scale = (SIZE - 2.0 * PAD) / span;
        let cx = 0.5 * (lo[0] + hi[0]);
        let cy = 0.5 * (lo[1] + hi[1]);
        let to = |p: P| -> (f64, f64) { (SIZE / 2.0 + (p[0] - cx) * scale, SIZE / 2.0 - (p[1] - cy) * scale) };
        let pts = |ps: &[P]| {
            ps.iter()
                .map(|&p| {
                    let (x, y) = to(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        // axes through the world origin, clamped to the frame
        let (ox, oy) = to([0.0, 0.0]);
        let ox = ox.clamp(PAD, SIZE - PAD);
        let oy = oy.clamp(PAD, SIZE - PAD);
        let _ = writeln!(
            out,
            r##"<g stroke="#bbbbbb" stroke-width="1"><line x1="{PAD}" y1="{oy:.3}" x2="{:.3}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="{PAD}" x2="{ox:.3}" y2="{:.3}"/></g>"##,
            SIZE - PAD,
            SIZE - PAD
        );
        for s in &self.shapes {
            match s {
                Shape::Polyline { points, stroke, width } => {
                    let _ = writeln!(
                        out,
                        r#"<polyline fill="none" stroke="{stroke}" stroke-width="{width}" points="{}"/>"#,
                        pts(points)
                    );
                }
                Shape::Polygon { points } => {
                    let _ = writeln!(
                        out,
                        r##"<polygon fill="#d9d9d9" stroke="#555555" stroke-width="1" points="{}"/>"##,
                        pts(points)
                    );
                }
                Shape::Disc { center, radius } => {
                    let (x, y) = to(*center);
                    let _ = writeln!(
                        out,
                        r##"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="#d9d9d9" stroke="#555555" stroke-width="1"/>"##,
                        radius * scale
                    );
                }
                Shape::Dot { center } => {
                    let (x, y) = to(*center);
                    let _ = writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#222222"/>"##);
                }
                Shape::Ellipse { center, rx, ry, angle } => {
                    let (x, y) = to(*center);
                    let _ = writeln!(
                        out,
                        r##"<ellipse cx="{x:.3}" cy="{y:.3}" rx="{:.3}" ry="{:.3}" transform="rotate({:.3} {x:.3} {y:.3})" fill="none" stroke="#e377c2" stroke-width="0.75"/>"##,
                        rx * scale,
                        ry * scale,
                        -angle.to_degrees()
                    );
                }
                Shape::Dashed { a, b } => {
                    let (x1, y1) = to(*a);
                    let (x2, y2) = to(*b);
                    let _ = writeln!(
                        out,
                        r##"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#d62728" stroke-width="1.5" stroke-dasharray="6 4"/>"##
                    );
                }
            }
        }
        if let Some(text) = caption {
            let _ = writeln!(
                out,
                r#"<text x="{PAD}" y="{:.3}" font-family="sans-serif" font-size="12">{text}</text>"#,
                SIZE - 4.0
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn add_curve_doc(canvas: &mut Canvas, scene: &Scene, name: &str, color: &'static str, hull_depth: Option<u32>) -> Result<()> {
    let doc = &scene.curves[name];
    with_dimension!(doc.dimension, D => {
        let curve: Curve<D> = doc.to_curve()?;
        canvas.curve(&curve, color, 1.5);
        if let Some(depth) = hull_depth {
            let q = curve.domain();
            let pieces = 1u32 << depth.min(12);
            for k in 0..pieces {
                let a = q.lo() + q.length() * k as f64 / pieces as f64;
                let b = if k + 1 == pieces { q.hi() } else { q.lo() + q.length() * (k + 1) as f64 / pieces as f64 };
                let seg = curve.segment(Interval::new(a, b)?)?;
                canvas.hull(&SpheroidHull::of_segment(&seg)?);
            }
        }
        Ok(())
    })
}

/// Draws the scene's curves and obstacles, the witness segments of any
/// distance queries in `reports`, and with `hull_depth = Some(k)` the hulls of
/// each curve cut into `2^k` equal pieces.
pub fn render_scene(scene: &Scene, reports: &[QueryReport], hull_depth: Option<u32>) -> Result<String> {
    let mut canvas = Canvas::default();
    for o in scene.obstacles.values() {
        canvas.obstacle(o);
    }
    for (i, name) in scene.curves.keys().enumerate() {
        add_curve_doc(&mut canvas, scene, name, PALETTE[i % PALETTE.len()], hull_depth)?;
    }
    for r in reports {
        if r.kind != QueryKind::Mindist {
            continue;
        }
        if let Some([a, b]) = &r.witness_points {
            canvas.shapes.push(Shape::Dashed {
                a: project_slice(a),
                b: project_slice(b),
            });
        }
    }
    Ok(canvas.finish(None))
}

/// Feasible paths in blue, unsafe in red, colliding in grey.
pub fn render_replan(spec: &ReplanSpec, summary: &ReplanSummary) -> Result<String> {
    let mut canvas = Canvas::default();
    for o in &spec.obstacles {
        canvas.obstacle(o);
    }
    // grey first so the interesting classes stay on top
    for class in [Class::Colliding, Class::Unsafe, Class::Feasible] {
        let (color, width) = match class {
            Class::Colliding => ("#b0b0b0", 0.5),
            Class::Unsafe => ("#d62728", 0.75),
            Class::Feasible => ("#1f77b4", 1.0),
        };
        for s in summary.details.iter().filter(|s| s.class == class) {
            with_dimension!(spec.dimension(), D => {
                let pts = s.control_points.iter().map(|p| Vector::<D>::from_column_slice(p)).collect();
                canvas.curve(&Curve::bezier_unit(pts)?, color, width);
                Ok(())
            })?;
        }
    }
    let caption = format!(
        "{} samples: {} colliding (grey), {} unsafe (red), {} feasible (blue)",
        summary.samples, summary.colliding, summary.unsafe_, summary.feasible
    );
    Ok(canvas.finish(Some(&caption)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::query::QueryConfig;

    #[test]
    fn empty_scene_has_axes_only() {
        let svg = render_scene(&Scene::default(), &[], None).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn hull_of_square() {
        let h = convex_hull(vec![[0.0, 0.0], [1.0, 1.0], [0.5, 0.5], [1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(h, vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
    }

    #[test]
    fn scene_with_witness_and_hulls() {
        let scene = Scene::parse(
            r#"{"curves": {"c": {"dimension": 2, "domain": [0, 6.283185307179586], "basis": "trig",
                 "terms": [{"dim": 0, "amplitude_cos": 1, "frequency": 1}, {"dim": 1, "amplitude_sin": 1, "frequency": 1}]}},
                "obstacles": {"p": {"type": "point", "p": [2, 0]}},
                "queries": [{"kind": "mindist", "subject": "c", "target": "p"}]}"#,
        )
        .unwrap();
        let reports = scene.run(&QueryConfig::default(), false);
        let svg = render_scene(&scene, &reports, Some(3)).unwrap();
        assert_eq!(svg.matches("<ellipse").count(), 8);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        let line = svg.lines().find(|l| l.contains("<polyline")).unwrap();
        assert_eq!(line.split_whitespace().filter(|w| w.contains(',')).count(), CURVE_SAMPLES);
    }
}
