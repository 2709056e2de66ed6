//! Synthetic boundary data by direct quadrature of the representation formulas
//!
//! ```text
//! g′(t) = P ∫_0^{ct/2} F(ξ) H(t − 2ξ/c) dξ
//! g″(t) = P [F(ct/2) H(0) c/2 + ∫_0^{ct/2} F(ξ) H′(t − 2ξ/c) dξ]
//! g(t)  = ∫_0^t g′(τ) dτ
//! ```
//!
//! with `P = κ c0 / (c (c + c0))` folded as `c0/(c(c+c0))` times `H = κΦ″`.

use crate::error::Result;
use crate::model::{effective_source, PhysicalConfig, Pulse, Signal, SourceSpec};
use crate::numerics::{cumulative_trapezoid, UniformGrid};
use rayon::prelude::*;

/// `c0 / (c (c + c0))`, the factor in front of the `H`-weighted integrals.
fn geometric_factor(cfg: &PhysicalConfig) -> f64 {
    cfg.c0 / (cfg.c * (cfg.c + cfg.c0))
}

/// `out[m] = h · trap_j f[j] k[m − j]` over `j = 0..=m`; `out[0] = 0`.
fn causal_convolution(f: &[f64], k: &[f64], h: f64) -> Vec<f64> {
    (0..f.len())
        .into_par_iter()
        .map(|m| {
            if m == 0 {
                return 0.0;
            }
            let inner: f64 = (1..m).map(|j| f[j] * k[m - j]).sum();
            h * (inner + 0.5 * (f[0] * k[m] + f[m] * k[0]))
        })
        .collect()
}

/// Source samples at `ξ_j = j · c·dt/2`, `j = 0..=samples`.
fn source_samples(cfg: &PhysicalConfig, source: &SourceSpec, samples: usize, dt: f64) -> Vec<f64> {
    let l = cfg.depth();
    let dxi = 0.5 * cfg.c * dt;
    (0..=samples).map(|j| source.value(l, (j as f64 * dxi).min(l))).collect()
}

fn first_derivative_on(cfg: &PhysicalConfig, pulse: &Pulse, source: &SourceSpec, samples: usize) -> Vec<f64> {
    let dt = cfg.t_max / samples as f64;
    let f = source_samples(cfg, source, samples, dt);
    let h: Vec<f64> = (0..=samples).map(|i| effective_source(cfg, pulse, i as f64 * dt)).collect();
    let scale = geometric_factor(cfg);
    causal_convolution(&f, &h, 0.5 * cfg.c * dt)
        .into_iter()
        .map(|v| scale * v)
        .collect()
}

/// `g(t) = u(0, t)` on the `M + 1`-node grid, integrated on a grid `oversample`
/// times finer and then decimated.
pub fn boundary_trace(cfg: &PhysicalConfig, pulse: &Pulse, source: &SourceSpec, oversample: usize) -> Result<Signal> {
    cfg.validate()?;
    source.validate()?;
    let factor = oversample.max(1);
    let fine_samples = cfg.samples * factor;
    let fine_dt = cfg.t_max / fine_samples as f64;
    let gp = first_derivative_on(cfg, pulse, source, fine_samples);
    let g = cumulative_trapezoid(&gp, fine_dt);
    let fine = Signal::new(UniformGrid::new(0.0, fine_dt, fine_samples + 1)?, g)?;
    let coarse = fine.decimate(factor)?;
    Signal::new(cfg.time_grid(), coarse.into_values())
}

/// `g′(t)` on the `M + 1`-node grid.
pub fn derivative_trace(cfg: &PhysicalConfig, pulse: &Pulse, source: &SourceSpec) -> Result<Signal> {
    cfg.validate()?;
    source.validate()?;
    Signal::new(cfg.time_grid(), first_derivative_on(cfg, pulse, source, cfg.samples))
}

/// `g″(t)` on the `M + 1`-node grid, using the closed-form `H′ = κΦ‴`.
pub fn second_derivative_trace(cfg: &PhysicalConfig, pulse: &Pulse, source: &SourceSpec) -> Result<Signal> {
    cfg.validate()?;
    source.validate()?;
    let m = cfg.samples;
    let dt = cfg.dt();
    let f = source_samples(cfg, source, m, dt);
    let hp: Vec<f64> = (0..=m).map(|i| cfg.kappa * pulse.d3(i as f64 * dt)).collect();
    let h0 = effective_source(cfg, pulse, 0.0);
    let scale = geometric_factor(cfg);
    let conv = causal_convolution(&f, &hp, 0.5 * cfg.c * dt);
    let values = f
        .iter()
        .zip(conv)
        .map(|(fm, v)| scale * (fm * h0 * 0.5 * cfg.c + v))
        .collect();
    Signal::new(cfg.time_grid(), values)
}
