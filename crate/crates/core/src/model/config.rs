use crate::error::{Error, Result};
use crate::numerics::UniformGrid;
use serde::{Deserialize, Serialize};

/// Constants of the direct problem and the time discretisation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConfig {
    /// Wave speed in the medium (m/ns).
    pub c: f64,
    /// Wave speed on the air side of the boundary (m/ns).
    pub c0: f64,
    /// Record length (ns).
    pub t_max: f64,
    /// Source scale κ multiplying Φ″ in `H = κ Φ″`.
    pub kappa: f64,
    /// Number of time intervals; the trace has `samples + 1` nodes.
    pub samples: usize,
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        Self {
            c: 0.15,
            c0: 0.3,
            t_max: 12.0,
            kappa: 1.0,
            samples: 1200,
        }
    }
}

impl PhysicalConfig {
    pub fn new(c: f64, c0: f64, t_max: f64, kappa: f64, samples: usize) -> Result<Self> {
        let cfg = Self { c, c0, t_max, kappa, samples };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, message: String| {
            Err(Error::Config {
                field: field.into(),
                message,
            })
        };
        if !(self.c > 0.0 && self.c.is_finite()) {
            return bad("c", format!("wave speed must be positive, got {}", self.c));
        }
        if !(self.c0 > 0.0 && self.c0.is_finite()) {
            return bad("c0", format!("air-side speed must be positive, got {}", self.c0));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return bad("T", format!("record length must be positive, got {}", self.t_max));
        }
        if !(self.kappa != 0.0 && self.kappa.is_finite()) {
            return bad("kappa", format!("source scale must be finite and non-zero, got {}", self.kappa));
        }
        if self.samples < 2 {
            return bad("M", format!("need at least 2 time intervals, got {}", self.samples));
        }
        Ok(())
    }

    pub fn with_samples(mut self, samples: usize) -> Result<Self> {
        self.samples = samples;
        self.validate()?;
        Ok(self)
    }

    /// Depth window `l = cT/2` reachable by a reflection within the record.
    pub fn depth(&self) -> f64 {
        0.5 * self.c * self.t_max
    }

    pub fn dt(&self) -> f64 {
        self.t_max / self.samples as f64
    }

    pub fn time_grid(&self) -> UniformGrid {
        UniformGrid::new(0.0, self.dt(), self.samples + 1).expect("validated config")
    }

    /// Depth grid whose step `c·Δt/2` maps node `j` onto two-way time `t_j`.
    pub fn depth_grid(&self) -> UniformGrid {
        UniformGrid::new(0.0, 0.5 * self.c * self.dt(), self.samples + 1).expect("validated config")
    }

    /// `κ c0 / (c (c + c0))`, the factor in front of every boundary-trace integral.
    pub fn prefactor(&self) -> f64 {
        self.kappa * self.c0 / (self.c * (self.c + self.c0))
    }

    /// Whether `(x, t)` lies in the observable region `x/c ≤ t ≤ T − x/c`.
    pub fn in_observable_domain(&self, x: f64, t: f64) -> bool {
        x >= 0.0 && x / self.c <= t && t <= self.t_max - x / self.c
    }
}
