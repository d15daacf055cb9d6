//! Parametric curves `ψ: I → ℝᴰ` and their arc-length machinery.
//!
//! Every curve carries its derivative. The bound
//! `u(Q) = sqrt(|Q| ∫_Q ψ'ᵀψ' dt)` on the arc length `s(Q) = ∫_Q |ψ'| dt`
//! is evaluated from a closed-form antiderivative of the squared speed when
//! the basis provides one, and by Gauss-Kronrod quadrature otherwise.

mod bezier;
mod custom;
mod power;
mod trig;

pub use bezier::Bezier;
pub use custom::{CustomCurve, ScalarFn, VectorFn};
pub use power::PowerPolynomial;
pub use trig::{TrigTerm, Trigonometric};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quadrature::{self, QuadratureConfig};

pub type Vector<const D: usize> = nalgebra::SVector<f64, D>;

/// Slack allowed when checking that a parameter lies in the domain.
pub const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum Basis<const D: usize> {
    Power(PowerPolynomial<D>),
    Bezier(Bezier<D>),
    Trigonometric(Trigonometric<D>),
    Custom(CustomCurve<D>),
}

/// An immutable parametric curve over a compact domain.
#[derive(Debug, Clone)]
pub struct Curve<const D: usize> {
    domain: Interval,
    basis: Basis<D>,
}

impl<const D: usize> Curve<D> {
    pub fn bezier(domain: Interval, control_points: Vec<Vector<D>>) -> Result<Self> {
        let domain = checked_domain(domain)?;
        Ok(Self {
            domain,
            basis: Basis::Bezier(Bezier::new(domain, control_points)?),
        })
    }

    /// Bézier curve on the conventional domain `[0, 1]`.
    pub fn bezier_unit(control_points: Vec<Vector<D>>) -> Result<Self> {
        Self::bezier(Interval::domain(0.0, 1.0)?, control_points)
    }

    /// Polynomial `sum_k coefficients[k] t^k`.
    pub fn power(domain: Interval, coefficients: Vec<Vector<D>>) -> Result<Self> {
        Ok(Self {
            domain: checked_domain(domain)?,
            basis: Basis::Power(PowerPolynomial::new(coefficients)?),
        })
    }

    /// `offset + slope t` plus the sinusoidal `terms`.
    pub fn trigonometric(
        domain: Interval,
        offset: Vector<D>,
        slope: Vector<D>,
        terms: Vec<TrigTerm>,
    ) -> Result<Self> {
        Ok(Self {
            domain: checked_domain(domain)?,
            basis: Basis::Trigonometric(Trigonometric::new(offset, slope, terms)?),
        })
    }

    /// Wraps user-supplied maps. The derivative is sampled at 17 Chebyshev
    /// points and the curve is rejected as constant if every sample vanishes;
    /// this catches the obvious mistakes, not adversarial inputs.
    pub fn custom(domain: Interval, custom: CustomCurve<D>) -> Result<Self> {
        let domain = checked_domain(domain)?;
        let moving = (0..17).any(|k| {
            let x = (std::f64::consts::PI * (2 * k + 1) as f64 / 34.0).cos();
            let t = domain.midpoint() + x * domain.length() / 2.0;
            (custom.derivative)(t).norm() >= 1e-14
        });
        if !moving {
            return Err(Error::ConstantCurve);
        }
        Ok(Self {
            domain,
            basis: Basis::Custom(custom),
        })
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        D
    }

    #[inline]
    pub fn domain(&self) -> Interval {
        self.domain
    }

    #[inline]
    pub fn basis(&self) -> &Basis<D> {
        &self.basis
    }

    /// True when the squared-speed integral has a closed form.
    pub fn has_closed_form_bound(&self) -> bool {
        match &self.basis {
            Basis::Custom(c) => c.speed_sq_antiderivative.is_some(),
            _ => true,
        }
    }

    fn check_param(&self, t: f64) -> Result<f64> {
        let q = self.domain;
        if !(t >= q.lo() - DOMAIN_SLACK && t <= q.hi() + DOMAIN_SLACK) {
            return Err(Error::OutsideDomain {
                t,
                lo: q.lo(),
                hi: q.hi(),
            });
        }
        Ok(t.clamp(q.lo(), q.hi()))
    }

    /// Checks that `q` lies in the domain (with slack) and clips it to the domain.
    pub fn check_interval(&self, q: Interval) -> Result<Interval> {
        let lo = self.check_param(q.lo())?;
        let hi = self.check_param(q.hi())?;
        Interval::new(lo, hi)
    }

    /// `ψ(t)`.
    pub fn evaluate(&self, t: f64) -> Result<Vector<D>> {
        Ok(self.point(self.check_param(t)?))
    }

    /// `ψ'(t)`.
    pub fn derivative(&self, t: f64) -> Result<Vector<D>> {
        Ok(self.velocity(self.check_param(t)?))
    }

    /// `ψ(t)` for a parameter already known to be in the domain.
    #[inline]
    pub fn point(&self, t: f64) -> Vector<D> {
        match &self.basis {
            Basis::Power(p) => p.position(t),
            Basis::Bezier(b) => b.position(t),
            Basis::Trigonometric(g) => g.position(t),
            Basis::Custom(c) => (c.position)(t),
        }
    }

    /// `ψ'(t)` for a parameter already known to be in the domain.
    #[inline]
    pub fn velocity(&self, t: f64) -> Vector<D> {
        match &self.basis {
            Basis::Power(p) => p.derivative(t),
            Basis::Bezier(b) => b.derivative(t),
            Basis::Trigonometric(g) => g.derivative(t),
            Basis::Custom(c) => (c.derivative)(t),
        }
    }

    /// `F(t)` with `F' = ψ'ᵀψ'`, defined up to an additive constant.
    pub fn speed_squared_antiderivative(&self, t: f64) -> Result<f64> {
        let t = self.check_param(t)?;
        match &self.basis {
            Basis::Power(p) => Ok(p.speed_squared_antiderivative(t)),
            Basis::Bezier(b) => Ok(b.speed_squared_antiderivative(t)),
            Basis::Trigonometric(g) => Ok(g.speed_squared_antiderivative(t)),
            Basis::Custom(c) => match &c.speed_sq_antiderivative {
                Some(f) => Ok(f(t)),
                None => Err(Error::Unsupported("a squared-speed antiderivative")),
            },
        }
    }

    /// `∫_Q ψ'ᵀψ' dt`: closed form when available, quadrature otherwise.
    pub fn speed_squared_integral(&self, q: Interval) -> Result<f64> {
        let q = self.check_interval(q)?;
        let (a, b) = (q.lo(), q.hi());
        if a == b {
            return Ok(0.0);
        }
        let value = match &self.basis {
            Basis::Power(p) => p.speed_squared_antiderivative(b) - p.speed_squared_antiderivative(a),
            Basis::Bezier(z) => z.speed_squared_antiderivative(b) - z.speed_squared_antiderivative(a),
            Basis::Trigonometric(g) => g.speed_squared_integral(a, b),
            Basis::Custom(c) => match &c.speed_sq_antiderivative {
                Some(f) => f(b) - f(a),
                None => quadrature::integrate(
                    |t| (c.derivative)(t).norm_squared(),
                    a,
                    b,
                    &QuadratureConfig::default(),
                )?,
            },
        };
        Ok(value.max(0.0))
    }

    /// Arc length `∫_Q |ψ'(t)| dt` by adaptive 15-point Gauss-Kronrod quadrature.
    pub fn arc_length(&self, q: Interval, cfg: &QuadratureConfig) -> Result<f64> {
        let q = self.check_interval(q)?;
        quadrature::integrate(|t| self.velocity(t).norm(), q.lo(), q.hi(), cfg)
    }

    /// `u(Q) = sqrt(|Q| ∫_Q ψ'ᵀψ' dt)`, an upper bound on the arc length over `Q`.
    pub fn arc_length_upper_bound(&self, q: Interval) -> Result<f64> {
        let q = self.check_interval(q)?;
        if q.length() == 0.0 {
            return Ok(0.0);
        }
        Ok((q.length() * self.speed_squared_integral(q)?).sqrt())
    }

    pub fn segment(&self, q: Interval) -> Result<CurveSegment<'_, D>> {
        CurveSegment::new(self, q)
    }

    pub fn whole(&self) -> CurveSegment<'_, D> {
        CurveSegment {
            curve: self,
            interval: self.domain,
        }
    }
}

fn checked_domain(domain: Interval) -> Result<Interval> {
    if domain.length() <= 0.0 {
        return Err(Error::DegenerateInterval {
            lo: domain.lo(),
            hi: domain.hi(),
        });
    }
    Ok(domain)
}

/// The part of a curve traced over a sub-interval of its domain.
#[derive(Debug, Clone, Copy)]
pub struct CurveSegment<'a, const D: usize> {
    curve: &'a Curve<D>,
    interval: Interval,
}

impl<'a, const D: usize> CurveSegment<'a, D> {
    pub fn new(curve: &'a Curve<D>, interval: Interval) -> Result<Self> {
        Ok(Self {
            curve,
            interval: curve.check_interval(interval)?,
        })
    }

    #[inline]
    pub fn curve(&self) -> &'a Curve<D> {
        self.curve
    }

    #[inline]
    pub fn interval(&self) -> Interval {
        self.interval
    }

    #[inline]
    pub fn start(&self) -> Vector<D> {
        self.curve.point(self.interval.lo())
    }

    #[inline]
    pub fn end(&self) -> Vector<D> {
        self.curve.point(self.interval.hi())
    }

    /// Midpoint parameter and its image.
    #[inline]
    pub fn midpoint(&self) -> (f64, Vector<D>) {
        let t = self.interval.midpoint();
        (t, self.curve.point(t))
    }

    pub fn arc_length_upper_bound(&self) -> Result<f64> {
        self.curve.arc_length_upper_bound(self.interval)
    }
}
