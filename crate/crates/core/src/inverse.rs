//! Tikhonov solve of the Gram system, reconstruction quality metrics and the
//! discrepancy-principle choice of the cut-off `N`.

use crate::error::{Error, Result};
use crate::model::{PhysicalConfig, Signal, SourceSpec};
use crate::numerics::{cholesky, condition_number, trapezoid_integrate};
use crate::spectral::{assemble, profile_grid, synthesize, Basis, CoefVector, GramSystem, KernelFamily};

#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub coeffs: CoefVector,
    pub alpha: f64,
    pub n: usize,
    /// `η = ‖Σ F_k G_k − g‖_{L²(0,T)}`.
    pub discrepancy: f64,
    pub rel_error: Option<f64>,
    /// `C(A, α) = (λ_max + α) / (λ_min + α)`.
    pub cond: f64,
}

/// Solves `(A + αI) f = b` by Cholesky.
pub fn solve(sys: &GramSystem<'_>) -> Result<Reconstruction> {
    let factor = cholesky(&sys.regularized_matrix())?;
    let coeffs = factor.solve(sys.rhs())?;
    let residual = sys.model_trace(&coeffs)?.sub(sys.data())?;
    let cond = condition_number(sys.matrix(), sys.alpha())?;
    Ok(Reconstruction {
        n: coeffs.len(),
        coeffs: CoefVector(coeffs),
        alpha: sys.alpha(),
        discrepancy: residual.l2_norm(),
        rel_error: None,
        cond,
    })
}

/// Solves and records `ε_F` against a known truth.
pub fn solve_against(sys: &GramSystem<'_>, truth: &SourceSpec, cfg: &PhysicalConfig) -> Result<Reconstruction> {
    let mut rec = solve(sys)?;
    let basis = Basis::new(cfg.depth(), rec.n)?;
    rec.rel_error = Some(rel_error(truth, &rec, &basis, cfg)?);
    Ok(rec)
}

/// `‖F − F^N‖ / ‖F‖` in `L²(0, l)` on the 2001-node profile grid.
pub fn rel_error(truth: &SourceSpec, rec: &Reconstruction, basis: &Basis, cfg: &PhysicalConfig) -> Result<f64> {
    let _ = cfg;
    let l = basis.depth();
    let grid = profile_grid(l);
    let approx = grid
        .nodes()
        .map(|x| synthesize(basis, &rec.coeffs, x))
        .collect::<Result<Vec<f64>>>()?;
    relative_l2(truth, &approx, l)
}

/// `ε_F` for a profile sampled on any grid over `[0, l]`, resampled linearly
/// onto the profile grid.
pub fn profile_rel_error(truth: &SourceSpec, profile: &Signal, l: f64) -> Result<f64> {
    let grid = profile_grid(l);
    let approx: Vec<f64> = grid.nodes().map(|x| profile.sample(x)).collect();
    relative_l2(truth, &approx, l)
}

fn relative_l2(truth: &SourceSpec, approx: &[f64], l: f64) -> Result<f64> {
    let grid = profile_grid(l);
    let (mut diff, mut norm) = (Vec::with_capacity(approx.len()), Vec::with_capacity(approx.len()));
    for (x, a) in grid.nodes().zip(approx) {
        let f = truth.value(l, x);
        diff.push((f - a) * (f - a));
        norm.push(f * f);
    }
    let denom = trapezoid_integrate(&norm, grid.step())?;
    if denom <= 0.0 {
        return Err(Error::invalid("reference profile has zero norm"));
    }
    Ok((trapezoid_integrate(&diff, grid.step())? / denom).sqrt())
}

/// Largest `N` in `scan` whose unregularized discrepancy stays at or above
/// `gamma1`; `max(scan)` for noise-free data, `min(scan)` if none qualifies.
pub fn select_cutoff(kernels: &KernelFamily, g: &Signal, gamma1: f64, scan: &[usize]) -> Result<usize> {
    let (&lo, &hi) = match (scan.iter().min(), scan.iter().max()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::invalid("cut-off scan is empty")),
    };
    if hi > kernels.len() || lo == 0 {
        return Err(Error::invalid(format!(
            "cut-off scan must lie in 1..={}, got {lo}..={hi}",
            kernels.len()
        )));
    }
    if gamma1 <= 0.0 || scan.len() == 1 {
        return Ok(if gamma1 <= 0.0 { hi } else { lo });
    }
    let full = assemble(kernels, g, 0.0)?;
    let mut best: Option<usize> = None;
    for &n in scan {
        let eta = solve(&full.leading(n)?)?.discrepancy;
        if eta >= gamma1 && best.is_none_or(|b| n > b) {
            best = Some(n);
        }
    }
    Ok(best.unwrap_or(lo))
}

/// A-priori bound `C(A, α) · √N · C₁ · γ₁` on the coefficient perturbation,
/// with `C₁ = max_j ‖G_j‖`.
pub fn error_bound(sys: &GramSystem<'_>, gamma1: f64) -> Result<f64> {
    if !(gamma1 >= 0.0) {
        return Err(Error::invalid(format!("gamma1 must be >= 0, got {gamma1}")));
    }
    if gamma1 == 0.0 {
        return Ok(0.0);
    }
    let c1 = sys.kernels().iter().map(Signal::l2_norm).fold(0.0, f64::max);
    let cond = condition_number(sys.matrix(), sys.alpha())?;
    Ok(cond * (sys.order() as f64).sqrt() * c1 * gamma1)
}
