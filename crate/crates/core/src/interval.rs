//! Closed parameter intervals and the bisection used by the branch-and-bound search.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` of curve parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", try_from = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Builds `[lo, hi]`, rejecting reversed or non-finite endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInterval { lo, hi });
        }
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// Builds a root domain, which must have positive length.
    pub fn domain(lo: f64, hi: f64) -> Result<Self> {
        let q = Self::new(lo, hi)?;
        if q.length() <= 0.0 {
            return Err(Error::DegenerateInterval { lo, hi });
        }
        Ok(q)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// `lo + (hi - lo) / 2`, which always lies inside the interval.
    #[inline]
    pub fn midpoint(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    #[inline]
    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    /// True when `other` lies inside `self`.
    #[inline]
    pub fn covers(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Splits into `[lo, mid]` and `[mid, hi]`, both closed and sharing `mid`.
    ///
    /// Fails when the interval has no interior point left to split at, either
    /// because it has zero length or because `mid` rounds onto an endpoint.
    pub fn bisect(&self) -> Result<(Interval, Interval)> {
        let mid = self.midpoint();
        if self.length() <= 0.0 || mid <= self.lo || mid >= self.hi {
            return Err(Error::DegenerateInterval {
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok((
            Interval { lo: self.lo, hi: mid },
            Interval { lo: mid, hi: self.hi },
        ))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(q: Interval) -> Self {
        [q.lo, q.hi]
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_unit() {
        let (l, r) = Interval::new(0.0, 1.0).unwrap().bisect().unwrap();
        assert_eq!((l.lo(), l.hi()), (0.0, 0.5));
        assert_eq!((r.lo(), r.hi()), (0.5, 1.0));
    }

    #[test]
    fn bisect_asymmetric() {
        let (l, r) = Interval::new(-1.0, 3.0).unwrap().bisect().unwrap();
        assert_eq!((l.lo(), l.hi()), (-1.0, 1.0));
        assert_eq!((r.lo(), r.hi()), (1.0, 3.0));
    }

    #[test]
    fn bisect_at_machine_precision() {
        let hi = 2.0 + 2f64.powi(-50);
        let q = Interval::new(2.0, hi).unwrap();
        let (l, r) = q.bisect().unwrap();
        assert_eq!(l.lo(), 2.0);
        assert_eq!(r.hi(), hi);
        assert_eq!(l.hi(), r.lo());
        assert!(l.hi() > 2.0 && l.hi() < hi);

        // one ulp apart: no representable midpoint
        let tight = Interval::new(2.0, f64::from_bits(2f64.to_bits() + 1)).unwrap();
        assert!(matches!(tight.bisect(), Err(Error::DegenerateInterval { .. })));
    }

    #[test]
    fn zero_length_cannot_bisect() {
        let q = Interval::new(1.0, 1.0).unwrap();
        assert!(matches!(q.bisect(), Err(Error::DegenerateInterval { .. })));
        assert!(Interval::domain(1.0, 1.0).is_err());
    }

    #[test]
    fn rejects_reversed_and_nan() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(f64::NAN, 0.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn json_is_a_pair() {
        let q = Interval::new(-0.5, 2.0).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[-0.5,2.0]");
        let back: Interval = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Interval>("[2.0, 1.0]").is_err());
    }
}
