//! Rank-one perturbation theory for finite-dimensional self-adjoint operators.
//!
//! The crate answers one question numerically: given a symmetric `A`, an
//! isolated eigenvalue `λ0` of multiplicity `m`, and the update
//! `B = A + c·f fᵀ`, what is the multiplicity of `λ0` in `σ(B)` and what is
//! the new spectral projector? The answer is read off the Laurent expansion
//! of the Krein denominator `w(λ) = 1 − c·(f|(λ−A)⁻¹f)` at `λ0`:
//!
//! * a pole at `λ0` (`(f|P f) ≠ 0`) removes one dimension,
//! * a regular non-zero value keeps the eigenspace,
//! * a regular zero adds one dimension.
//!
//! [`eigcore`] supplies the dense symmetric substrate, [`krein`] the
//! perturbation engine and [`dirichlet`] the Green's-function example on
//! `[0, 1]` that exercises it.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dirichlet;
pub mod eigcore;
mod error;
pub mod krein;

pub use error::{Error, Result};
pub use num_complex::Complex64;
