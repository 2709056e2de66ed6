//! Sine eigenbasis on `(0, l)`, the boundary responses `G_k` of the basis
//! functions and the Gram system `(A + αI) f = b`.
//!
//! With `X_k(x) = √(2/l) sin(kπx/l)` the boundary trace of a source
//! `Σ f_k X_k` is `Σ f_k G_k(t)` where
//!
//! ```text
//! G_k(t) = P ∫_0^{ct/2} X_k(ξ) (Φ′(t − 2ξ/c) − Φ′(0)) dξ,   P = κ c0 / (c (c + c0)).
//! ```
//!
//! The ξ-grid step is `c·Δt/2`, so the upper limit `ct/2` is always a node and
//! the lag `t_m − 2ξ_j/c` is exactly `(m − j)·Δt`.

use crate::error::{Error, Result};
use crate::model::{PhysicalConfig, Pulse, Signal, SourceSpec};
use crate::numerics::{trapezoid_integrate, trapezoid_weights, SymMatrix, UniformGrid};
use rayon::prelude::*;

/// Number of nodes of the depth grid used for projections and profile norms.
pub const PROFILE_NODES: usize = 2001;

/// `√(2/l) sin(kπx/l)`.
#[inline]
pub fn eigenfunction(l: f64, k: usize, x: f64) -> f64 {
    (2.0 / l).sqrt() * (k as f64 * std::f64::consts::PI * x / l).sin()
}

/// Uniform grid on `[0, l]` with [`PROFILE_NODES`] nodes.
pub fn profile_grid(l: f64) -> UniformGrid {
    UniformGrid::spanning(0.0, l, PROFILE_NODES - 1).expect("positive depth")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Basis {
    depth: f64,
    modes: usize,
}

impl Basis {
    pub fn new(depth: f64, modes: usize) -> Result<Self> {
        if !(depth > 0.0 && depth.is_finite()) {
            return Err(Error::invalid(format!("basis depth must be positive, got {depth}")));
        }
        if modes == 0 {
            return Err(Error::invalid("basis needs at least one mode"));
        }
        Ok(Self { depth, modes })
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// `λ_k = kπ/l`.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        k as f64 * std::f64::consts::PI / self.depth
    }

    /// `X_k(x)` for `1 ≤ k ≤ N`, `0 ≤ x ≤ l`.
    pub fn eval(&self, k: usize, x: f64) -> Result<f64> {
        if k == 0 || k > self.modes {
            return Err(Error::invalid(format!("mode {k} is outside 1..={}", self.modes)));
        }
        let slack = 1e-12 * self.depth;
        if !(x >= -slack && x <= self.depth + slack) {
            return Err(Error::invalid(format!("x = {x} is outside [0, {}]", self.depth)));
        }
        Ok(eigenfunction(self.depth, k, x.clamp(0.0, self.depth)))
    }
}

/// Coefficients `F_1..F_N` of a partial sine series.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefVector(pub Vec<f64>);

impl CoefVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Euclidean norm, equal to the `L²(0, l)` norm of the synthesized profile.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// The coefficients as a [`SourceSpec::Fourier`] profile.
    pub fn to_source(&self) -> SourceSpec {
        SourceSpec::Fourier(self.0.clone())
    }
}

/// `F_k = ∫_0^l F X_k dx` by trapezoid on [`PROFILE_NODES`] nodes.
pub fn project(basis: &Basis, source: &SourceSpec, cfg: &PhysicalConfig) -> Result<CoefVector> {
    let _ = cfg;
    let grid = profile_grid(basis.depth);
    let f: Vec<f64> = grid.nodes().map(|x| source.value(basis.depth, x)).collect();
    let coeffs = (1..=basis.modes)
        .map(|k| {
            let prod: Vec<f64> = grid
                .nodes()
                .zip(&f)
                .map(|(x, fx)| fx * eigenfunction(basis.depth, k, x))
                .collect();
            trapezoid_integrate(&prod, grid.step())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(CoefVector(coeffs))
}

/// `Σ F_k X_k(x)`.
pub fn synthesize(basis: &Basis, coeffs: &CoefVector, x: f64) -> Result<f64> {
    if coeffs.len() != basis.modes {
        return Err(Error::invalid(format!(
            "{} coefficients for a basis of {} modes",
            coeffs.len(),
            basis.modes
        )));
    }
    Ok(coeffs
        .0
        .iter()
        .enumerate()
        .map(|(i, f)| f * eigenfunction(basis.depth, i + 1, x))
        .sum())
}

/// The responses `G_1..G_N` on the time grid, with the prefactor used.
#[derive(Clone, Debug)]
pub struct KernelFamily {
    kernels: Vec<Signal>,
    prefactor: f64,
}

impl KernelFamily {
    /// Wraps arbitrary kernel signals (prefactor recorded as 1).
    pub fn from_signals(kernels: Vec<Signal>) -> Result<Self> {
        if kernels.is_empty() {
            return Err(Error::invalid("kernel family is empty"));
        }
        for k in &kernels[1..] {
            kernels[0].check_grid(k)?;
        }
        Ok(Self { kernels, prefactor: 1.0 })
    }

    pub fn kernels(&self) -> &[Signal] {
        &self.kernels
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn grid(&self) -> &UniformGrid {
        self.kernels[0].grid()
    }

    /// `Σ f_k G_k(t)` on the kernel grid.
    pub fn combine(&self, coeffs: &[f64]) -> Result<Signal> {
        if coeffs.len() > self.kernels.len() {
            return Err(Error::invalid(format!(
                "{} coefficients for {} kernels",
                coeffs.len(),
                self.kernels.len()
            )));
        }
        let mut out = vec![0.0; self.grid().count()];
        for (f, g) in coeffs.iter().zip(&self.kernels) {
            for (o, v) in out.iter_mut().zip(g.values()) {
                *o += f * v;
            }
        }
        Signal::new(*self.grid(), out)
    }

    /// `max_k ‖G_k‖_{L²(0,T)}` over the first `n` kernels.
    pub fn max_norm(&self, n: usize) -> f64 {
        self.kernels[..n.min(self.kernels.len())]
            .iter()
            .map(Signal::l2_norm)
            .fold(0.0, f64::max)
    }
}

/// Samples `G_1..G_N` on the `[0, T]` grid of `cfg`.
pub fn kernel_functions(cfg: &PhysicalConfig, pulse: &Pulse, basis: &Basis) -> KernelFamily {
    let m_max = cfg.samples;
    let dt = cfg.dt();
    let dxi = 0.5 * cfg.c * dt;
    let l = basis.depth;
    let v0 = pulse.d1(0.0);
    let lag: Vec<f64> = (0..=m_max).map(|i| pulse.d1(i as f64 * dt) - v0).collect();
    let prefactor = cfg.prefactor();

    let kernels = (1..=basis.modes)
        .into_par_iter()
        .map(|k| {
            let xk: Vec<f64> = (0..=m_max).map(|j| eigenfunction(l, k, j as f64 * dxi)).collect();
            let values: Vec<f64> = (0..=m_max)
                .map(|m| {
                    if m == 0 {
                        return 0.0;
                    }
                    let inner: f64 = (1..m).map(|j| xk[j] * lag[m - j]).sum();
                    let ends = 0.5 * (xk[0] * lag[m] + xk[m] * lag[0]);
                    prefactor * dxi * (inner + ends)
                })
                .collect();
            Signal::new(cfg.time_grid(), values).expect("grid sized from config")
        })
        .collect();
    KernelFamily { kernels, prefactor }
}

/// Normal equations of the Tikhonov functional on the span of `G_1..G_N`.
#[derive(Clone, Debug)]
pub struct GramSystem<'k> {
    kernels: &'k [Signal],
    prefactor: f64,
    data: Signal,
    matrix: SymMatrix,
    rhs: Vec<f64>,
    alpha: f64,
}

/// `A_ij = ∫ G_i G_j dt`, `b_j = ∫ G_j g dt` by trapezoid on the shared grid.
pub fn assemble<'k>(kernels: &'k KernelFamily, g: &Signal, alpha: f64) -> Result<GramSystem<'k>> {
    assemble_slice(kernels.kernels(), kernels.prefactor(), g, alpha)
}

pub(crate) fn assemble_slice<'k>(
    kernels: &'k [Signal],
    prefactor: f64,
    g: &Signal,
    alpha: f64,
) -> Result<GramSystem<'k>> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(format!("alpha must be >= 0, got {alpha}")));
    }
    if kernels.is_empty() {
        return Err(Error::invalid("no kernels to assemble"));
    }
    for k in kernels {
        k.check_grid(g)?;
    }
    let w = trapezoid_weights(g.len(), g.grid().step());
    let n = kernels.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let gi = kernels[i].values();
            (0..=i)
                .map(|j| {
                    let gj = kernels[j].values();
                    w.iter().zip(gi).zip(gj).map(|((w, a), b)| w * a * b).sum()
                })
                .collect()
        })
        .collect();
    let matrix = SymMatrix::from_lower_fn(n, |i, j| rows[i][j])?;
    let rhs = kernels
        .iter()
        .map(|k| w.iter().zip(k.values()).zip(g.values()).map(|((w, a), b)| w * a * b).sum())
        .collect();
    Ok(GramSystem {
        kernels,
        prefactor,
        data: g.clone(),
        matrix,
        rhs,
        alpha,
    })
}

impl<'k> GramSystem<'k> {
    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn kernels(&self) -> &'k [Signal] {
        self.kernels
    }

    pub fn data(&self) -> &Signal {
        &self.data
    }

    /// `A + αI`.
    pub fn regularized_matrix(&self) -> SymMatrix {
        self.matrix.shifted(self.alpha)
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<GramSystem<'k>> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::invalid(format!("alpha must be >= 0, got {alpha}")));
        }
        Ok(GramSystem { alpha, ..self.clone() })
    }

    /// The system restricted to the first `n` modes (leading block of `A`).
    pub fn leading(&self, n: usize) -> Result<GramSystem<'k>> {
        Ok(GramSystem {
            kernels: &self.kernels[..n.min(self.kernels.len())],
            prefactor: self.prefactor,
            data: self.data.clone(),
            matrix: self.matrix.leading(n)?,
            rhs: self.rhs[..n].to_vec(),
            alpha: self.alpha,
        })
    }

    /// `Σ f_k G_k(t)`.
    pub fn model_trace(&self, coeffs: &[f64]) -> Result<Signal> {
        if coeffs.len() != self.order() {
            return Err(Error::invalid("coefficient count does not match system order"));
        }
        let mut out = vec![0.0; self.data.len()];
        for (f, g) in coeffs.iter().zip(self.kernels) {
            for (o, v) in out.iter_mut().zip(g.values()) {
                *o += f * v;
            }
        }
        Signal::new(*self.data.grid(), out)
    }
}
