use crate::error::{Error, Result};
use crate::numerics::{trapezoid_integrate, UniformGrid};
use serde::{Deserialize, Serialize};

/// Values sampled on a uniform grid (a time trace or a depth profile).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Signal {
    grid: UniformGrid,
    values: Vec<f64>,
}

impl Signal {
    pub fn new(grid: UniformGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.count()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: UniformGrid) -> Self {
        Self {
            values: vec![0.0; grid.count()],
            grid,
        }
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: grid.nodes().map(f).collect(),
            grid,
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn integral(&self) -> f64 {
        trapezoid_integrate(&self.values, self.grid.step()).expect("grid has >= 2 nodes")
    }

    /// Trapezoid `L²` inner product; both signals must share a grid.
    pub fn dot(&self, other: &Signal) -> Result<f64> {
        self.check_grid(other)?;
        let prod: Vec<f64> = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        trapezoid_integrate(&prod, self.grid.step())
    }

    pub fn l2_norm(&self) -> f64 {
        self.dot(self).expect("same grid").sqrt()
    }

    pub fn check_grid(&self, other: &Signal) -> Result<()> {
        if self.grid.matches(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "grids differ: {:?} vs {:?}",
                self.grid, other.grid
            )))
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Signal {
        Signal {
            grid: self.grid,
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Signal {
        self.map(|v| v * factor)
    }

    pub fn zip_with(&self, other: &Signal, f: impl Fn(f64, f64) -> f64) -> Result<Signal> {
        self.check_grid(other)?;
        Ok(Signal {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Piecewise-linear interpolation; clamps to the end values outside the grid.
    pub fn sample(&self, t: f64) -> f64 {
        let pos = (t - self.grid.start()) / self.grid.step();
        if pos <= 0.0 {
            return self.values[0];
        }
        let last = self.values.len() - 1;
        if pos >= last as f64 {
            return self.values[last];
        }
        let i = pos.floor() as usize;
        let frac = pos - i as f64;
        if frac == 0.0 {
            self.values[i]
        } else {
            self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
        }
    }

    /// Keeps every `factor`-th node; the grid must divide evenly.
    pub fn decimate(&self, factor: usize) -> Result<Signal> {
        if factor == 0 || !self.grid.intervals().is_multiple_of(factor) {
            return Err(Error::invalid(format!(
                "cannot decimate {} intervals by {factor}",
                self.grid.intervals()
            )));
        }
        let grid = UniformGrid::new(
            self.grid.start(),
            self.grid.step() * factor as f64,
            self.grid.intervals() / factor + 1,
        )?;
        Signal::new(grid, self.values.iter().step_by(factor).copied().collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
