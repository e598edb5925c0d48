//! Ordered sample points for evaluating functions of ω.

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid<T> {
    points: Vec<T>,
}

impl<T: Real> FrequencyGrid<T> {
    /// start, start + step, … up to stop inclusive. The count is rounded so
    /// that a stop lying on the lattice within 1e-9 steps is kept.
    pub fn range(start: T, stop: T, step: T) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() || !step.is_finite() {
            return Err(Error::Grid("non-finite grid bounds".into()));
        }
        if stop < start {
            return Ok(Self { points: Vec::new() });
        }
        if !(step > T::zero()) {
            if stop == start {
                return Ok(Self { points: vec![start] });
            }
            return Err(Error::Grid("grid step must be positive".into()));
        }
        let span = (stop - start) / step;
        let n = (span + T::lit(1e-9)).floor().to_usize().ok_or_else(|| Error::Grid("grid too large".into()))?;
        if n > 50_000_000 {
            return Err(Error::Grid("grid too large".into()));
        }
        Ok(Self {
            points: (0..=n).map(|i| start + step * T::from_usize_lossy(i)).collect(),
        })
    }

    /// Explicit points, which must be finite and strictly increasing.
    pub fn from_points(points: Vec<T>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Grid("grid points must be finite and increasing".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest gap between neighbouring points.
    pub fn max_step(&self) -> T {
        self.points.windows(2).fold(T::zero(), |m, w| m.max(w[1] - w[0]))
    }
}
