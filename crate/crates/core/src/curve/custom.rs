use std::fmt;
use std::sync::Arc;

use super::Vector;

pub type VectorFn<const D: usize> = Arc<dyn Fn(f64) -> Vector<D> + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied curve.
///
/// The derivative map is mandatory and is trusted as given. Absolute
/// continuity of the position map is the caller's responsibility.
#[derive(Clone)]
pub struct CustomCurve<const D: usize> {
    pub(crate) position: VectorFn<D>,
    pub(crate) derivative: VectorFn<D>,
    pub(crate) speed_sq_antiderivative: Option<ScalarFn>,
}

impl<const D: usize> CustomCurve<D> {
    pub fn new<P, V>(position: P, derivative: V) -> Self
    where
        P: Fn(f64) -> Vector<D> + Send + Sync + 'static,
        V: Fn(f64) -> Vector<D> + Send + Sync + 'static,
    {
        Self {
            position: Arc::new(position),
            derivative: Arc::new(derivative),
            speed_sq_antiderivative: None,
        }
    }

    /// Declares `F` with `F'(t) = ψ'(t)ᵀψ'(t)`, enabling the closed-form arc-length bound.
    pub fn with_speed_squared_antiderivative<F>(mut self, antiderivative: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.speed_sq_antiderivative = Some(Arc::new(antiderivative));
        self
    }
}

impl<const D: usize> fmt::Debug for CustomCurve<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomCurve")
            .field(
                "speed_sq_antiderivative",
                &self.speed_sq_antiderivative.is_some(),
            )
            .finish_non_exhaustive()
    }
}
