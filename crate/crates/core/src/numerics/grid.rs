use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Equally spaced nodes `start + i * step`, `i = 0..count`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    start: f64,
    step: f64,
    count: usize,
}

impl UniformGrid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::invalid(format!("grid step must be positive and finite, got {step}")));
        }
        if count < 2 {
            return Err(Error::invalid(format!("grid needs at least 2 nodes, got {count}")));
        }
        Ok(Self { start, step, count })
    }

    /// `intervals + 1` nodes spanning `[start, end]`.
    pub fn spanning(start: f64, end: f64, intervals: usize) -> Result<Self> {
        if intervals == 0 {
            return Err(Error::invalid("grid needs at least one interval"));
        }
        Self::new(start, (end - start) / intervals as f64, intervals + 1)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn intervals(&self) -> usize {
        self.count - 1
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.node(self.count - 1)
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.node(i))
    }

    /// Same span with every interval split into `factor` pieces.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        if factor == 0 {
            return Err(Error::invalid("refinement factor must be >= 1"));
        }
        Self::new(self.start, self.step / factor as f64, self.intervals() * factor + 1)
    }

    /// Two grids are interchangeable when their nodes agree to rounding.
    pub fn matches(&self, other: &UniformGrid) -> bool {
        let tol = 1e-12 * self.step.abs().max(other.step.abs());
        self.count == other.count
            && (self.start - other.start).abs() <= tol * self.count as f64
            && (self.step - other.step).abs() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn last_node_is_reproducible() {
        let g = UniformGrid::spanning(0.0, 12.0, 1200).unwrap();
        assert_eq!(g.count(), 1201);
        assert!((g.end() - 12.0).abs() <= f64::EPSILON * 12.0);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(UniformGrid::new(0.0, 0.0, 10).is_err());
        assert!(UniformGrid::new(0.0, -1.0, 10).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn refinement_keeps_span() {
        let g = UniformGrid::spanning(0.0, 1.0, 10).unwrap();
        let f = g.refined(4).unwrap();
        assert_eq!(f.count(), 41);
        assert!((f.end() - 1.0).abs() < 1e-15);
        assert!((f.node(4) - g.node(1)).abs() < 1e-15);
    }
}
