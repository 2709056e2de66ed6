//! Random perturbation of boundary data: `g^γ = g + γ n ‖g‖ / ‖n‖`, where `n`
//! is the piecewise-linear interpolant of standard normal values at `N_n + 1`
//! equally spaced nodes of `[0, T]`.

use crate::error::{Error, Result};
use crate::model::Signal;
use crate::numerics::{RngState, UniformGrid};
use serde::{Deserialize, Serialize};

/// Default number of noise cells on `[0, T]`.
pub const DEFAULT_NOISE_NODES: usize = 180;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    /// Relative level `‖δg‖ / ‖g‖`.
    pub gamma: f64,
    pub seed: u64,
    /// Number of cells `N_n`; `τ = T / N_n`.
    pub nodes: usize,
}

impl NoiseSpec {
    pub fn new(gamma: f64, seed: u64) -> Self {
        Self {
            gamma,
            seed,
            nodes: DEFAULT_NOISE_NODES,
        }
    }

    pub fn with_nodes(self, nodes: usize) -> Self {
        Self { nodes, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::invalid(format!("noise level must be >= 0, got {}", self.gamma)));
        }
        if self.nodes == 0 {
            return Err(Error::invalid("noise needs at least one cell"));
        }
        Ok(())
    }
}

/// Hat-function sum `Σ ξ_j η((t − jτ)/τ)` sampled on `grid`, with the nodal
/// values drawn from `rng`.
pub fn noise_field(grid: &UniformGrid, nodes: usize, rng: &mut RngState) -> Result<Signal> {
    if nodes == 0 {
        return Err(Error::invalid("noise needs at least one cell"));
    }
    let xi = rng.normal_samples(nodes + 1);
    let intervals = grid.intervals();
    let values = (0..grid.count())
        .map(|i| {
            // position i·N_n / intervals in noise cells, split exactly in integers
            let scaled = i * nodes;
            let j = scaled / intervals;
            let frac = (scaled % intervals) as f64 / intervals as f64;
            if j >= nodes {
                xi[nodes]
            } else {
                xi[j] + frac * (xi[j + 1] - xi[j])
            }
        })
        .collect();
    Signal::new(*grid, values)
}

/// Returns the perturbed trace and the absolute noise level `γ₁ = γ ‖g‖`.
pub fn perturb(g: &Signal, spec: &NoiseSpec) -> Result<(Signal, f64)> {
    spec.validate()?;
    if spec.gamma == 0.0 {
        return Ok((g.clone(), 0.0));
    }
    let g_norm = g.l2_norm();
    if g_norm == 0.0 {
        return Err(Error::invalid("cannot scale relative noise to a zero trace"));
    }
    let mut rng = RngState::new(spec.seed);
    let n = loop {
        let n = noise_field(g.grid(), spec.nodes, &mut rng)?;
        if n.l2_norm() > 0.0 {
            break n;
        }
    };
    let scale = spec.gamma * g_norm / n.l2_norm();
    let noisy = g.zip_with(&n, |a, b| a + scale * b)?;
    Ok((noisy, spec.gamma * g_norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trace() -> Signal {
        let grid = UniformGrid::new(0.0, 0.01, 1201).unwrap();
        Signal::from_fn(grid, |t| (0.7 * t).sin() * (-0.1 * t).exp())
    }

    #[test]
    fn zero_level_is_identity() {
        let g = trace();
        let (out, gamma1) = perturb(&g, &NoiseSpec::new(0.0, 5)).unwrap();
        assert_eq!(out, g);
        assert_eq!(gamma1, 0.0);
    }

    #[test]
    fn deterministic_per_seed() {
        let g = trace();
        let spec = NoiseSpec::new(0.05, 42);
        assert_eq!(perturb(&g, &spec).unwrap(), perturb(&g, &spec).unwrap());
        assert_ne!(perturb(&g, &spec).unwrap().0, perturb(&g, &NoiseSpec::new(0.05, 43)).unwrap().0);
    }

    #[test]
    fn zero_trace_is_rejected() {
        let g = Signal::zeros(UniformGrid::new(0.0, 0.01, 100).unwrap());
        assert!(perturb(&g, &NoiseSpec::new(0.1, 1)).is_err());
        assert!(perturb(&g, &NoiseSpec::new(0.0, 1)).is_ok());
        assert!(perturb(&trace(), &NoiseSpec::new(-0.1, 1)).is_err());
    }

    #[test]
    fn interpolates_nodal_values() {
        let grid = UniformGrid::new(0.0, 0.01, 1201).unwrap();
        let intervals = grid.intervals();
        for nodes in [180, 1200, 7, 300] {
            let mut a = RngState::new(9);
            let mut b = RngState::new(9);
            let n = noise_field(&grid, nodes, &mut a).unwrap();
            let xi = b.normal_samples(nodes + 1);
            let mut checked = 0;
            for (j, x) in xi.iter().enumerate() {
                // noise nodes that coincide with samples
                if (j * intervals) % nodes == 0 {
                    let i = j * intervals / nodes;
                    assert!((n.values()[i] - x).abs() < 1e-12, "N_n = {nodes}, node {j}");
                    checked += 1;
                }
            }
            assert!(checked >= 2);
        }
    }

    proptest! {
        #[test]
        fn relative_level_is_exact(gamma in 0.001f64..0.5, seed in any::<u64>(), nodes in 1usize..400) {
            let g = trace();
            let (out, gamma1) = perturb(&g, &NoiseSpec::new(gamma, seed).with_nodes(nodes)).unwrap();
            let rel = out.sub(&g).unwrap().l2_norm() / g.l2_norm();
            prop_assert!((rel - gamma).abs() < 1e-10);
            prop_assert!((gamma1 - gamma * g.l2_norm()).abs() < 1e-12);
        }
    }
}
