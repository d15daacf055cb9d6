//! Bézier curves over an arbitrary parameter domain.
//!
//! The squared speed of a degree-n Bézier curve is a degree 2(n-1) Bernstein
//! polynomial built from products of hodograph coefficients, and its integral
//! is again a Bernstein polynomial, so the arc-length bound never leaves the
//! Bernstein basis.

use smallvec::SmallVec;

use super::Vector;
use crate::error::{Error, Result};
use crate::interval::Interval;

#[derive(Debug, Clone)]
pub struct Bezier<const D: usize> {
    control_points: Vec<Vector<D>>,
    /// Control points of d/du, u in [0, 1].
    hodograph: Vec<Vector<D>>,
    /// Bernstein coefficients (degree 2n - 1) of the integral from 0 to u of |dψ/du|².
    speed_sq_integral: Vec<f64>,
    lo: f64,
    len: f64,
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

/// Evaluates a scalar Bernstein polynomial by de Casteljau's recurrence.
pub(crate) fn de_casteljau_scalar(coeffs: &[f64], u: f64) -> f64 {
    let mut work: SmallVec<[f64; 96]> = SmallVec::from_slice(coeffs);
    let n = work.len();
    let v = 1.0 - u;
    for r in 1..n {
        for i in 0..n - r {
            work[i] = v * work[i] + u * work[i + 1];
        }
    }
    work[0]
}

pub(crate) fn de_casteljau<const D: usize>(points: &[Vector<D>], u: f64) -> Vector<D> {
    let mut work: SmallVec<[Vector<D>; 24]> = SmallVec::from_slice(points);
    let n = work.len();
    let v = 1.0 - u;
    for r in 1..n {
        for i in 0..n - r {
            work[i] = work[i] * v + work[i + 1] * u;
        }
    }
    work[0]
}

impl<const D: usize> Bezier<D> {
    pub(crate) fn new(domain: Interval, control_points: Vec<Vector<D>>) -> Result<Self> {
        if control_points.len() < 2 {
            return Err(Error::InvalidCurve(
                "a Bézier curve needs at least two control points".into(),
            ));
        }
        if control_points.iter().any(|p| p.iter().any(|x| !x.is_finite())) {
            return Err(Error::InvalidCurve("non-finite control point".into()));
        }
        let n = control_points.len() - 1;
        let hodograph: Vec<Vector<D>> = control_points
            .windows(2)
            .map(|w| (w[1] - w[0]) * n as f64)
            .collect();
        if hodograph.iter().all(|h| h.iter().all(|&x| x == 0.0)) {
            return Err(Error::ConstantCurve);
        }

        // |h(u)|² in Bernstein form of degree 2m, m = n - 1
        let m = n - 1;
        let mut product = vec![0.0; 2 * m + 1];
        for (i, hi) in hodograph.iter().enumerate() {
            for (j, hj) in hodograph.iter().enumerate() {
                product[i + j] += binomial(m, i) * binomial(m, j) * hi.dot(hj);
            }
        }
        for (k, c) in product.iter_mut().enumerate() {
            *c /= binomial(2 * m, k);
        }

        // integral of a degree-p Bernstein polynomial: d_k = (1/(p+1)) sum_{j<k} c_j
        let p = 2 * m;
        let mut speed_sq_integral = Vec::with_capacity(p + 2);
        let mut acc = 0.0;
        speed_sq_integral.push(0.0);
        for c in &product {
            acc += c;
            speed_sq_integral.push(acc / (p + 1) as f64);
        }

        Ok(Self {
            control_points,
            hodograph,
            speed_sq_integral,
            lo: domain.lo(),
            len: domain.length(),
        })
    }

    pub fn control_points(&self) -> &[Vector<D>] {
        &self.control_points
    }

    /// Polynomial degree (number of control points minus one).
    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    #[inline]
    fn local(&self, t: f64) -> f64 {
        (t - self.lo) / self.len
    }

    pub(crate) fn position(&self, t: f64) -> Vector<D> {
        de_casteljau(&self.control_points, self.local(t))
    }

    pub(crate) fn derivative(&self, t: f64) -> Vector<D> {
        de_casteljau(&self.hodograph, self.local(t)) / self.len
    }

    /// Integral of |ψ'(t)|² dt from the domain start to t.
    ///
    /// With u = (t - lo) / len the t-speed is the u-speed over len, and
    /// dt = len du, so the integral picks up a single factor of 1 / len.
    pub(crate) fn speed_squared_antiderivative(&self, t: f64) -> f64 {
        de_casteljau_scalar(&self.speed_sq_integral, self.local(t)) / self.len
    }
}
