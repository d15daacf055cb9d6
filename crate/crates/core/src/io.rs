//! JSON documents for curves and obstacles.
//!
//! Curves:
//!
//! ```json
//! {"dimension": 2, "domain": [0, 1], "basis": "bezier", "control_points": [[0, 0], [1, 2], [2, 0]]}
//! {"dimension": 2, "domain": [0, 1], "basis": "power", "coefficients": [[0, 1, 0, 1], [0, 1]]}
//! {"dimension": 2, "domain": [0, 6.283185307179586], "basis": "trig",
//!  "terms": [{"dim": 0, "amplitude_cos": 1, "frequency": 1}, {"dim": 1, "amplitude_sin": 1, "frequency": 1}],
//!  "affine": {"offset": [0, 0], "slope": [0, 0]}}
//! ```
//!
//! Power coefficients are listed per coordinate in ascending degree. The trig
//! `affine` part `offset + slope t` is optional.
//!
//! Obstacles:
//!
//! ```json
//! {"type": "point", "p": [2, 0]}
//! {"type": "polytope", "vertices": [[0, 0], [1, 0], [0, 1]]}
//! {"type": "ball", "center": [0, 0], "radius": 1}
//! {"type": "hull", "focus_a": [0, 0], "focus_b": [1, 0], "major_length": 2}
//! ```

use serde::{Deserialize, Serialize};

use crate::curve::{Basis, Curve, TrigTerm, Vector};
use crate::distance::ConvexObstacle;
use crate::error::{Error, Result};
use crate::hull::SpheroidHull;
use crate::interval::Interval;

/// Serde adapter writing a `Vector<D>` as a plain array.
pub mod vector {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::curve::Vector;

    pub fn serialize<S: Serializer, const D: usize>(v: &Vector<D>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter())
    }

    pub fn deserialize<'de, De: Deserializer<'de>, const D: usize>(d: De) -> Result<Vector<D>, De::Error> {
        let xs = Vec::<f64>::deserialize(d)?;
        if xs.len() != D {
            return Err(De::Error::invalid_length(xs.len(), &format!("{D} coordinates").as_str()));
        }
        Ok(Vector::from_column_slice(&xs))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub dimension: usize,
    pub domain: Interval,
    #[serde(flatten)]
    pub basis: BasisDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
pub enum BasisDoc {
    Bezier {
        control_points: Vec<Vec<f64>>,
    },
    Power {
        coefficients: Vec<Vec<f64>>,
    },
    Trig {
        terms: Vec<TrigTerm>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        affine: Option<Affine>,
    },
}

/// `offset + slope * t`; an empty list stands for the zero vector.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Affine {
    #[serde(default)]
    pub offset: Vec<f64>,
    #[serde(default)]
    pub slope: Vec<f64>,
}

fn to_vector<const D: usize>(xs: &[f64], what: &str) -> Result<Vector<D>> {
    if xs.len() != D {
        return Err(Error::InvalidCurve(format!("{what} has {} coordinates, expected {D}", xs.len())));
    }
    Ok(Vector::from_column_slice(xs))
}

fn to_vector_or_zero<const D: usize>(xs: &[f64], what: &str) -> Result<Vector<D>> {
    if xs.is_empty() {
        Ok(Vector::zeros())
    } else {
        to_vector(xs, what)
    }
}

impl CurveDoc {
    pub fn to_curve<const D: usize>(&self) -> Result<Curve<D>> {
        if self.dimension != D {
            return Err(Error::DimensionMismatch {
                expected: D,
                found: self.dimension,
            });
        }
        let domain = Interval::domain(self.domain.lo(), self.domain.hi())?;
        match &self.basis {
            BasisDoc::Bezier { control_points } => {
                let pts = control_points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| to_vector(p, &format!("control point {i}")))
                    .collect::<Result<Vec<_>>>()?;
                Curve::bezier(domain, pts)
            }
            BasisDoc::Power { coefficients } => {
                if coefficients.len() != D {
                    return Err(Error::InvalidCurve(format!(
                        "power basis lists {} coordinates, expected {D}",
                        coefficients.len()
                    )));
                }
                let degree = coefficients.iter().map(Vec::len).max().unwrap_or(0);
                let by_degree = (0..degree)
                    .map(|k| Vector::<D>::from_fn(|i, _| coefficients[i].get(k).copied().unwrap_or(0.0)))
                    .collect();
                Curve::power(domain, by_degree)
            }
            BasisDoc::Trig { terms, affine } => {
                let affine = affine.clone().unwrap_or_default();
                let offset = to_vector_or_zero(&affine.offset, "affine offset")?;
                let slope = to_vector_or_zero(&affine.slope, "affine slope")?;
                Curve::trigonometric(domain, offset, slope, terms.clone())
            }
        }
    }

    /// Fails with [`Error::Unsupported`] for custom curves.
    pub fn from_curve<const D: usize>(curve: &Curve<D>) -> Result<Self> {
        let rows = |vs: &[Vector<D>]| vs.iter().map(|v| v.iter().copied().collect()).collect();
        let basis = match curve.basis() {
            Basis::Bezier(b) => BasisDoc::Bezier {
                control_points: rows(b.control_points()),
            },
            Basis::Power(p) => BasisDoc::Power {
                coefficients: (0..D)
                    .map(|i| p.coefficients().iter().map(|c| c[i]).collect())
                    .collect(),
            },
            Basis::Trigonometric(t) => BasisDoc::Trig {
                terms: t.terms().to_vec(),
                affine: Some(Affine {
                    offset: t.offset().iter().copied().collect(),
                    slope: t.slope().iter().copied().collect(),
                }),
            },
            Basis::Custom(_) => return Err(Error::Unsupported("a serializable representation")),
        };
        Ok(Self {
            dimension: D,
            domain: curve.domain(),
            basis,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ObstacleDoc {
    Point { p: Vec<f64> },
    Polytope { vertices: Vec<Vec<f64>> },
    Ball { center: Vec<f64>, radius: f64 },
    Hull { focus_a: Vec<f64>, focus_b: Vec<f64>, major_length: f64 },
}

impl ObstacleDoc {
    /// Dimension implied by the first coordinate list.
    pub fn dimension(&self) -> usize {
        match self {
            ObstacleDoc::Point { p } => p.len(),
            ObstacleDoc::Polytope { vertices } => vertices.first().map_or(0, Vec::len),
            ObstacleDoc::Ball { center, .. } => center.len(),
            ObstacleDoc::Hull { focus_a, .. } => focus_a.len(),
        }
    }

    pub fn to_obstacle<const D: usize>(&self) -> Result<ConvexObstacle<D>> {
        let vec = |xs: &[f64], what: &str| -> Result<Vector<D>> {
            if xs.len() != D {
                return Err(Error::InvalidObstacle(format!(
                    "{what} has {} coordinates, expected {D}",
                    xs.len()
                )));
            }
            Ok(Vector::from_column_slice(xs))
        };
        match self {
            ObstacleDoc::Point { p } => Ok(ConvexObstacle::point(vec(p, "point")?)),
            ObstacleDoc::Polytope { vertices } => ConvexObstacle::polytope(
                vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| vec(v, &format!("vertex {i}")))
                    .collect::<Result<_>>()?,
            ),
            ObstacleDoc::Ball { center, radius } => ConvexObstacle::ball(vec(center, "center")?, *radius),
            ObstacleDoc::Hull {
                focus_a,
                focus_b,
                major_length,
            } => Ok(ConvexObstacle::Hull(SpheroidHull::new(
                vec(focus_a, "focus_a")?,
                vec(focus_b, "focus_b")?,
                *major_length,
            )?)),
        }
    }

    pub fn from_obstacle<const D: usize>(o: &ConvexObstacle<D>) -> Self {
        let row = |v: &Vector<D>| v.iter().copied().collect::<Vec<_>>();
        match o {
            ConvexObstacle::Point(p) => ObstacleDoc::Point { p: row(p) },
            ConvexObstacle::Polytope(vs) => ObstacleDoc::Polytope {
                vertices: vs.iter().map(row).collect(),
            },
            ConvexObstacle::Ball { center, radius } => ObstacleDoc::Ball {
                center: row(center),
                radius: *radius,
            },
            ConvexObstacle::Hull(h) => ObstacleDoc::Hull {
                focus_a: row(&h.focus_a),
                focus_b: row(&h.focus_b),
                major_length: h.major_length,
            },
        }
    }
}

/// Parses JSON, reporting syntax and schema errors with their line and column.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_curve<const D: usize>(text: &str) -> Result<Curve<D>> {
    from_json::<CurveDoc>(text)?.to_curve()
}

pub fn parse_obstacle<const D: usize>(text: &str) -> Result<ConvexObstacle<D>> {
    from_json::<ObstacleDoc>(text)?.to_obstacle()
}
