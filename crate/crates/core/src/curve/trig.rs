//! Curves built from an affine part plus sinusoidal terms.
//!
//! Each coordinate of the derivative is `s + sum_k (alpha_k cos θ_k + beta_k sin θ_k)`
//! with `θ_k = ω_k t + φ_k`. Squaring and applying the product-to-sum
//! identities turns the squared speed into a constant plus a finite list of
//! harmonics, each integrated in closed form.

use serde::{Deserialize, Serialize};

use super::Vector;
use crate::error::{Error, Result};

/// `amplitude_cos * cos(frequency t + phase) + amplitude_sin * sin(frequency t + phase)`
/// added to coordinate `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub dim: usize,
    #[serde(default)]
    pub amplitude_cos: f64,
    #[serde(default)]
    pub amplitude_sin: f64,
    pub frequency: f64,
    #[serde(default)]
    pub phase: f64,
}

impl TrigTerm {
    pub fn cos(dim: usize, amplitude: f64, frequency: f64) -> Self {
        Self {
            dim,
            amplitude_cos: amplitude,
            amplitude_sin: 0.0,
            frequency,
            phase: 0.0,
        }
    }

    pub fn sin(dim: usize, amplitude: f64, frequency: f64) -> Self {
        Self {
            dim,
            amplitude_cos: 0.0,
            amplitude_sin: amplitude,
            frequency,
            phase: 0.0,
        }
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }
}

/// `c cos(ν t + χ) + s sin(ν t + χ)`
#[derive(Debug, Clone, Copy, PartialEq)]
struct Harmonic {
    freq: f64,
    phase: f64,
    c: f64,
    s: f64,
}

impl Harmonic {
    fn antiderivative(&self, t: f64) -> f64 {
        let theta = self.freq * t + self.phase;
        if self.freq == 0.0 {
            (self.c * self.phase.cos() + self.s * self.phase.sin()) * t
        } else {
            (self.c * theta.sin() - self.s * theta.cos()) / self.freq
        }
    }

    /// Definite integral over [a, b] in the cancellation-free midpoint form.
    fn integral(&self, a: f64, b: f64) -> f64 {
        let m = a + (b - a) / 2.0;
        let h = (b - a) / 2.0;
        let x = self.freq * h;
        let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
        let theta = self.freq * m + self.phase;
        (b - a) * sinc * (self.c * theta.cos() + self.s * theta.sin())
    }
}

#[derive(Debug, Clone)]
pub struct Trigonometric<const D: usize> {
    offset: Vector<D>,
    slope: Vector<D>,
    terms: Vec<TrigTerm>,
    constant: f64,
    harmonics: Vec<Harmonic>,
}

impl<const D: usize> Trigonometric<D> {
    pub(crate) fn new(offset: Vector<D>, slope: Vector<D>, terms: Vec<TrigTerm>) -> Result<Self> {
        for term in &terms {
            if term.dim >= D {
                return Err(Error::InvalidCurve(format!(
                    "trig term targets dimension {} of a {}-dimensional curve",
                    term.dim, D
                )));
            }
            let values = [
                term.amplitude_cos,
                term.amplitude_sin,
                term.frequency,
                term.phase,
            ];
            if values.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidCurve("non-finite trig term".into()));
            }
        }
        if offset.iter().chain(slope.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidCurve("non-finite affine part".into()));
        }
        let moving = slope.iter().any(|&s| s != 0.0)
            || terms.iter().any(|k| {
                k.frequency * k.amplitude_cos != 0.0 || k.frequency * k.amplitude_sin != 0.0
            });
        if !moving {
            return Err(Error::ConstantCurve);
        }

        let mut constant = 0.0;
        let mut harmonics = Vec::new();
        for dim in 0..D {
            let s = slope[dim];
            constant += s * s;
            // derivative of a cos θ + b sin θ is ω b cos θ - ω a sin θ
            let own: Vec<(f64, f64, f64, f64)> = terms
                .iter()
                .filter(|k| k.dim == dim && k.frequency != 0.0)
                .map(|k| {
                    (
                        k.frequency,
                        k.phase,
                        k.frequency * k.amplitude_sin,
                        -k.frequency * k.amplitude_cos,
                    )
                })
                .collect();
            for &(w, p, alpha, beta) in &own {
                if s != 0.0 {
                    harmonics.push(Harmonic {
                        freq: w,
                        phase: p,
                        c: 2.0 * s * alpha,
                        s: 2.0 * s * beta,
                    });
                }
            }
            for (j, &(wj, pj, aj, bj)) in own.iter().enumerate() {
                for (k, &(wk, pk, ak, bk)) in own.iter().enumerate().skip(j) {
                    let weight = if j == k { 0.5 } else { 1.0 };
                    // cos(A-B), cos(A+B), sin(A+B), sin(A-B) with A = θ_j, B = θ_k
                    harmonics.push(Harmonic {
                        freq: wj - wk,
                        phase: pj - pk,
                        c: weight * (aj * ak + bj * bk),
                        s: weight * (bj * ak - aj * bk),
                    });
                    harmonics.push(Harmonic {
                        freq: wj + wk,
                        phase: pj + pk,
                        c: weight * (aj * ak - bj * bk),
                        s: weight * (aj * bk + bj * ak),
                    });
                }
            }
        }
        harmonics.retain(|h| h.c != 0.0 || h.s != 0.0);

        Ok(Self {
            offset,
            slope,
            terms,
            constant,
            harmonics,
        })
    }

    pub fn offset(&self) -> &Vector<D> {
        &self.offset
    }

    pub fn slope(&self) -> &Vector<D> {
        &self.slope
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub(crate) fn position(&self, t: f64) -> Vector<D> {
        let mut p = self.offset + self.slope * t;
        for k in &self.terms {
            let (sin, cos) = (k.frequency * t + k.phase).sin_cos();
            p[k.dim] += k.amplitude_cos * cos + k.amplitude_sin * sin;
        }
        p
    }

    pub(crate) fn derivative(&self, t: f64) -> Vector<D> {
        let mut v = self.slope;
        for k in &self.terms {
            let (sin, cos) = (k.frequency * t + k.phase).sin_cos();
            v[k.dim] += k.frequency * (k.amplitude_sin * cos - k.amplitude_cos * sin);
        }
        v
    }

    pub(crate) fn speed_squared_antiderivative(&self, t: f64) -> f64 {
        self.constant * t
            + self
                .harmonics
                .iter()
                .map(|h| h.antiderivative(t))
                .sum::<f64>()
    }

    pub(crate) fn speed_squared_integral(&self, a: f64, b: f64) -> f64 {
        self.constant * (b - a) + self.harmonics.iter().map(|h| h.integral(a, b)).sum::<f64>()
    }
}
