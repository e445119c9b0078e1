//! The Green's-function example: `A = T⁻¹` for the Dirichlet Laplacian on
//! `[0, 1]`, perturbed by `α f fᵀ` with `f(x) = x − 1/2`.
//!
//! [`kernels`] holds the closed forms; [`DirichletModel`] and
//! [`nystrom_build`] discretize them for the [`crate::krein`] engine.

pub mod kernels;
mod model;
mod quadrature;

pub use kernels::{
    analytic_secular, eigenfunction_b, f_z_profile, green_kernel, inverse_spectral_map,
    inverse_spectral_map_scalar, overlap_analytic, resolvent_kernel, WavenumberPoint,
};
pub use model::{
    exact_eigenvalue, nystrom_build, DirichletModel, DirichletStudy, ModeCheck, Quadrature,
    ResolvedVerification, SecularRoot, WavenumberCase,
};
pub use quadrature::gauss_legendre_unit;
