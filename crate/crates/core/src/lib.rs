//! Reconstruction of the spacewise source `F(x)` of the 1D wave equation
//! `u_tt = c² u_xx + F(x) H(t − x/c)` from the boundary trace `g(t) = u(0, t)`.
//!
//! The main route expands `F` in the Dirichlet sine basis on `(0, l)`, `l = cT/2`,
//! precomputes the boundary response `G_k(t)` of every basis function and solves
//! the Tikhonov normal equations `(A + αI) f = b`. A second, independent route
//! differentiates the data twice and marches a Volterra equation of the second
//! kind. The [`harness`] module wires both into reproducible experiments
//! (condition numbers, discrepancies, noisy ensembles) that write CSV.
//!
//! ```
//! use wavesource::{forward, inverse, spectral};
//! use wavesource::model::{PhysicalConfig, Pulse, SourceSpec};
//!
//! let cfg = PhysicalConfig::default().with_samples(300).unwrap();
//! let pulse = Pulse::damped_sine(8.0, 0.2).unwrap();
//! let source = SourceSpec::two_gaussian();
//!
//! let g = forward::boundary_trace(&cfg, &pulse, &source, 2).unwrap();
//! let basis = spectral::Basis::new(cfg.depth(), 11).unwrap();
//! let kernels = spectral::kernel_functions(&cfg, &pulse, &basis);
//! let system = spectral::assemble(&kernels, &g, 0.0).unwrap();
//! let rec = inverse::solve(&system).unwrap();
//! let err = inverse::rel_error(&source, &rec, &basis, &cfg).unwrap();
//! assert!(err < 0.05);
//! ```

pub mod error;
pub mod forward;
pub mod harness;
pub mod inverse;
pub mod model;
pub mod noiselab;
pub mod numerics;
pub mod spectral;
pub mod volterra;

pub use error::{Error, Result};
