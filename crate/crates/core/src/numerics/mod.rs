//! Quadrature, small dense symmetric linear algebra and a seeded normal generator.

mod grid;
mod linalg;
mod quadrature;
mod rng;

pub use grid::UniformGrid;
pub use linalg::{cholesky, cholesky_solve, condition_number, sym_eigvals, Cholesky, SymMatrix};
pub use quadrature::{cumulative_trapezoid, trapezoid_integrate, trapezoid_weights};
pub use rng::RngState;
