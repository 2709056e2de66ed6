//! Direct reconstruction through the second-kind Volterra equation
//!
//! ```text
//! ĝ(x) = F(x) + (2 / (c H(0))) ∫_0^x F(ξ) H′(2(x − ξ)/c) dξ,
//! ĝ(x) = 2 (c + c0) g″(2x/c) / (c0 H(0)),
//! ```
//!
//! marched in `x` with the product trapezoid rule on the depth grid of step
//! `c·Δt/2`, so every kernel lag `2(x_m − x_j)/c` is the time node `(m − j)·Δt`.

use crate::error::{Error, Result};
use crate::model::{effective_source, PhysicalConfig, Pulse, Signal};

/// Mollifier width, in time steps, for differentiating noisy traces.
pub const DEFAULT_SMOOTHING_STEPS: f64 = 3.0;

/// Smallest `|1 + Δx·K(0)/2|` accepted by the marching step.
const BREAKDOWN_TOLERANCE: f64 = 1e-8;

/// Discrete Gaussian smoothing with weights renormalized where the stencil is
/// cut by the ends of the record.
fn mollify(values: &[f64], sigma_steps: f64) -> Vec<f64> {
    let half = (4.0 * sigma_steps).ceil() as isize;
    let kernel: Vec<f64> = (-half..=half)
        .map(|i| (-0.5 * (i as f64 / sigma_steps).powi(2)).exp())
        .collect();
    let n = values.len() as isize;
    (0..n)
        .map(|i| {
            let (mut acc, mut wsum) = (0.0, 0.0);
            for (o, w) in (-half..=half).zip(&kernel) {
                let j = i + o;
                if (0..n).contains(&j) {
                    acc += w * values[j as usize];
                    wsum += w;
                }
            }
            acc / wsum
        })
        .collect()
}

/// `g″` by second-order central differences, one-sided at the ends; the data
/// are first smoothed by a Gaussian of standard deviation `smooth_width` (time
/// units) when it is positive.
pub fn differentiate_twice(g: &Signal, smooth_width: f64) -> Result<Signal> {
    let n = g.len();
    if n < 5 {
        return Err(Error::invalid(format!("need at least 5 samples to differentiate, got {n}")));
    }
    if !(smooth_width >= 0.0 && smooth_width.is_finite()) {
        return Err(Error::invalid(format!("smoothing width must be >= 0, got {smooth_width}")));
    }
    let dt = g.grid().step();
    let smoothed;
    let v: &[f64] = if smooth_width > 0.0 {
        smoothed = mollify(g.values(), smooth_width / dt);
        &smoothed
    } else {
        g.values()
    };
    let inv = 1.0 / (dt * dt);
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv;
    }
    out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * inv;
    out[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) * inv;
    Signal::new(*g.grid(), out)
}

/// Recovers `F` on the `M + 1`-node depth grid from samples of `g″`.
pub fn volterra_solve(cfg: &PhysicalConfig, pulse: &Pulse, g2: &Signal) -> Result<Signal> {
    cfg.validate()?;
    let h0 = effective_source(cfg, pulse, 0.0);
    if h0 == 0.0 || !h0.is_finite() {
        return Err(Error::SingularKernel);
    }
    let m_max = cfg.samples;
    let dt = cfg.dt();
    let grid = cfg.depth_grid();
    let dx = grid.step();

    let data_scale = 2.0 * (cfg.c + cfg.c0) / (cfg.c0 * h0);
    let ghat: Vec<f64> = (0..=m_max).map(|m| data_scale * g2.sample(m as f64 * dt)).collect();
    let kernel_scale = 2.0 / (cfg.c * h0);
    let kernel: Vec<f64> = (0..=m_max)
        .map(|i| kernel_scale * cfg.kappa * pulse.d3(i as f64 * dt))
        .collect();

    let denom = 1.0 + 0.5 * dx * kernel[0];
    if denom.abs() < BREAKDOWN_TOLERANCE {
        return Err(Error::MarchingBreakdown(denom));
    }
    let mut f = vec![0.0; m_max + 1];
    f[0] = ghat[0];
    for m in 1..=m_max {
        let history: f64 = 0.5 * kernel[m] * f[0] + (1..m).map(|j| kernel[m - j] * f[j]).sum::<f64>();
        f[m] = (ghat[m] - dx * history) / denom;
    }
    Signal::new(grid, f)
}

/// Differentiates a trace (smoothing it over `smooth_steps` time steps) and
/// marches the Volterra equation.
pub fn reconstruct_from_trace(cfg: &PhysicalConfig, pulse: &Pulse, g: &Signal, smooth_steps: f64) -> Result<Signal> {
    let g2 = differentiate_twice(g, smooth_steps * g.grid().step())?;
    volterra_solve(cfg, pulse, &g2)
}
