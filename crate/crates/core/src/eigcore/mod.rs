//! Dense symmetric linear algebra: eigendecomposition, clustering of the
//! spectrum into isolated eigenvalues, and resolvent solves.

mod cluster;
mod eig;
mod lu;
mod matrix;

use alloc::vec::Vec;

pub use cluster::{cluster_spectrum, cluster_values, locate_cluster, EigenCluster};
pub use eig::{symmetric_eig, SpectralDecomposition};
pub use lu::ComplexLu;
pub(crate) use matrix::{check_finite, dot};
pub use matrix::{ComplexMatrix, Magnitude, RealMatrix, Square, SymmetricMatrix};

use crate::{Complex64, Result};

/// `(λI − A)⁻¹v` for real or complex `λ`, refusing shifts within the default
/// cluster tolerance of `σ(A)`.
pub fn resolvent_apply(
    a: &SymmetricMatrix,
    lambda: Complex64,
    v: &[f64],
) -> Result<Vec<Complex64>> {
    let d = symmetric_eig(a)?;
    d.resolvent_apply(lambda, v, d.default_cluster_tol())
}
