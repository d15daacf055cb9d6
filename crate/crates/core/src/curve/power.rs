use super::Vector;
use crate::error::{Error, Result};

/// Polynomial curve `sum_k c_k t^k` with vector coefficients in ascending degree.
#[derive(Debug, Clone)]
pub struct PowerPolynomial<const D: usize> {
    coefficients: Vec<Vector<D>>,
    derivative: Vec<Vector<D>>,
    /// Scalar coefficients of the antiderivative of |ψ'(t)|², zero constant term.
    speed_sq_antiderivative: Vec<f64>,
}

fn horner<T>(coeffs: &[T], t: f64) -> T
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    let (last, rest) = coeffs.split_last().expect("nonempty coefficients");
    rest.iter().rev().fold(*last, |acc, &c| acc * t + c)
}

impl<const D: usize> PowerPolynomial<D> {
    pub(crate) fn new(coefficients: Vec<Vector<D>>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidCurve("power basis needs coefficients".into()));
        }
        if coefficients.iter().any(|c| c.iter().any(|x| !x.is_finite())) {
            return Err(Error::InvalidCurve("non-finite coefficient".into()));
        }
        let derivative: Vec<Vector<D>> = coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        if derivative.iter().all(|c| c.iter().all(|&x| x == 0.0)) {
            return Err(Error::ConstantCurve);
        }

        let n = derivative.len();
        let mut square = vec![0.0; 2 * n - 1];
        for (i, a) in derivative.iter().enumerate() {
            for (j, b) in derivative.iter().enumerate() {
                square[i + j] += a.dot(b);
            }
        }
        let mut speed_sq_antiderivative = Vec::with_capacity(square.len() + 1);
        speed_sq_antiderivative.push(0.0);
        speed_sq_antiderivative.extend(
            square
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );

        Ok(Self {
            coefficients,
            derivative,
            speed_sq_antiderivative,
        })
    }

    pub fn coefficients(&self) -> &[Vector<D>] {
        &self.coefficients
    }

    pub(crate) fn position(&self, t: f64) -> Vector<D> {
        horner(&self.coefficients, t)
    }

    pub(crate) fn derivative(&self, t: f64) -> Vector<D> {
        horner(&self.derivative, t)
    }

    pub(crate) fn speed_squared_antiderivative(&self, t: f64) -> f64 {
        horner(&self.speed_sq_antiderivative, t)
    }
}
