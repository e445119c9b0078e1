use alloc::vec::Vec;

use crate::eigcore::{
    cluster_spectrum, locate_cluster, symmetric_eig, ComplexLu, ComplexMatrix, RealMatrix,
    SpectralDecomposition, SymmetricMatrix,
};
use crate::{Complex64, Error, Result};

/// Leading Laurent coefficients of `(λ − A)⁻¹` at `λ0`:
///
/// `(λ − A)⁻¹ = P/(λ − λ0) + R − (λ − λ0)R² + (λ − λ0)²R³ − …`
///
/// `P` is the spectral projector and `R` the reduced resolvent. When `λ0` is
/// not an eigenvalue `P = 0` and `R = (λ0 − A)⁻¹`.
#[derive(Clone, Debug)]
pub struct LaurentData {
    pub lambda0: f64,
    pub projector: RealMatrix,
    pub reduced: RealMatrix,
    /// `dim P`, the multiplicity of `λ0` in `σ(A)`.
    pub multiplicity: usize,
}

impl LaurentData {
    /// `P/h + R − hR²`, the expansion truncated after the linear term.
    pub fn truncated_resolvent(&self, h: f64) -> RealMatrix {
        let r2 = self.reduced.matmul(&self.reduced);
        self.projector
            .scale(1.0 / h)
            .add(&self.reduced)
            .sub(&r2.scale(h))
    }
}

pub fn laurent_at(a: &SymmetricMatrix, lambda0: f64, cluster_tol: f64) -> Result<LaurentData> {
    laurent_from(&symmetric_eig(a)?, lambda0, cluster_tol)
}

pub fn laurent_from(
    d: &SpectralDecomposition,
    lambda0: f64,
    cluster_tol: f64,
) -> Result<LaurentData> {
    let clusters = cluster_spectrum(d, cluster_tol)?;
    let values = d.eigenvalues();
    let members = match locate_cluster(&clusters, values, lambda0, cluster_tol)? {
        Some(ci) => clusters[ci].members.clone(),
        None => 0..0,
    };
    let weights: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(k, &mu)| {
            if members.contains(&k) {
                0.0
            } else {
                1.0 / (lambda0 - mu)
            }
        })
        .collect();
    Ok(LaurentData {
        lambda0,
        projector: d.projector(members.clone()),
        reduced: d.spectral_sum(&weights),
        multiplicity: members.len(),
    })
}

pub const DEFAULT_EPSILONS: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

/// Convergence record of `iε(λ0 + iε − A)⁻¹ → P` as `ε ↓ 0`.
#[derive(Clone, Debug)]
pub struct ProjectionLimit {
    /// Real part of `iε(λ0 + iε − A)⁻¹` at the smallest `ε`.
    pub projector: RealMatrix,
    /// Largest imaginary part at the smallest `ε`; vanishes in the limit.
    pub imaginary_max: f64,
    pub epsilons: Vec<f64>,
    /// Max-norm distance to the spectral projector, one per `ε`.
    pub distances: Vec<f64>,
    /// Distances are non-increasing over the second half of the sequence, up
    /// to the rounding floor of the solves.
    pub tail_monotone: bool,
}

/// Evaluates `iε(λ0 + iε − A)⁻¹` by direct LU solves and compares it with
/// the eigendecomposition projector from [`laurent_at`].
pub fn projection_limit(
    a: &SymmetricMatrix,
    lambda0: f64,
    epsilons: &[f64],
) -> Result<ProjectionLimit> {
    if epsilons.is_empty() {
        return Err(Error::InvalidArgument("epsilon sequence is empty"));
    }
    if epsilons.iter().any(|&e| !(e > 0.0 && e <= 1.0)) {
        return Err(Error::InvalidArgument("epsilons must lie in (0, 1]"));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "epsilons must be strictly decreasing",
        ));
    }
    let d = symmetric_eig(a)?;
    let reference = laurent_from(&d, lambda0, d.default_cluster_tol())?
        .projector
        .to_complex();

    let n = a.order();
    let mut distances = Vec::with_capacity(epsilons.len());
    let mut last = ComplexMatrix::zeros(n);
    for &eps in epsilons {
        let shift = Complex64::new(lambda0, eps);
        let m = ComplexMatrix::from_fn(n, |i, j| {
            let diag = if i == j {
                shift
            } else {
                Complex64::new(0.0, 0.0)
            };
            diag - a.get(i, j)
        });
        let inv = ComplexLu::factor(m)?.inverse();
        let approx = inv.scale(Complex64::new(0.0, eps));
        distances.push(approx.sub(&reference).max_abs());
        last = approx;
    }
    // Rounding in the solve contributes about u·‖A‖/ε, which grows as ε
    // shrinks; only increases beyond that floor count against monotonicity.
    let floor = 16.0 * f64::EPSILON * (1.0 + a.matrix().max_abs());
    let tail_start = distances.len() / 2;
    let tail_monotone = (tail_start + 1..distances.len())
        .all(|i| distances[i] <= distances[i - 1] + floor / epsilons[i]);
    Ok(ProjectionLimit {
        projector: RealMatrix::from_fn(n, |i, j| last[(i, j)].re),
        imaginary_max: last
            .as_slice()
            .iter()
            .fold(0.0, |m, z| f64::max(m, libm::fabs(z.im))),
        epsilons: epsilons.to_vec(),
        distances,
        tail_monotone,
    })
}
