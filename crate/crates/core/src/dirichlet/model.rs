use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::kernels::{green_unchecked, WavenumberPoint};
use super::quadrature::gauss_legendre_unit;
use crate::eigcore::{symmetric_eig, RealMatrix, SpectralDecomposition, SymmetricMatrix};
use crate::krein::{
    verify_window, CaseReport, KreinProblem, OracleReport, RankOneUpdate, SecularFunction,
    Tolerances,
};
use crate::{Error, Result};

/// Node family used by [`nystrom_build`]. Both are symmetric about `1/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Quadrature {
    /// Uniform midpoint nodes `(j + 1/2)/N`. The sampled kernel keeps the
    /// translation symmetry of `B`'s kernel `1/4 − |x − ξ|/2`, so discrete
    /// roots of `w` land on `σ(A)` exactly, as in the continuum.
    #[default]
    Midpoint,
    /// Gauss–Legendre nodes on `(0, 1)`.
    GaussLegendre,
}

/// `A = T⁻¹` and `B = A + α f fᵀ`, discretized on `N` quadrature nodes.
#[derive(Clone, Debug)]
pub struct DirichletModel {
    alpha: f64,
    quadrature: Quadrature,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl DirichletModel {
    pub const MIN_NODES: usize = 16;

    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        Self::with_quadrature(alpha, n, Quadrature::default())
    }

    pub fn with_quadrature(alpha: f64, n: usize, quadrature: Quadrature) -> Result<Self> {
        if n < Self::MIN_NODES {
            return Err(Error::InvalidArgument(
                "Nystrom discretization needs at least 16 nodes",
            ));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidArgument("coupling must be finite"));
        }
        let (nodes, weights) = match quadrature {
            Quadrature::Midpoint => {
                let h = 1.0 / n as f64;
                ((0..n).map(|j| (j as f64 + 0.5) * h).collect(), vec![h; n])
            }
            Quadrature::GaussLegendre => gauss_legendre_unit(n)?,
        };
        Ok(Self {
            alpha,
            quadrature,
            nodes,
            weights,
        })
    }

    pub fn quadrature(&self) -> Quadrature {
        self.quadrature
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Discrete vector `√ωᵢ·u(xᵢ)` of a function `u`.
    pub fn discretize(&self, u: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| libm::sqrt(w) * u(x))
            .collect()
    }

    /// Inverse of [`Self::discretize`]: nodal values `vᵢ/√ωᵢ`.
    pub fn nodal_values(&self, v: &[f64]) -> Vec<f64> {
        v.iter()
            .zip(&self.weights)
            .map(|(&x, &w)| x / libm::sqrt(w))
            .collect()
    }

    pub fn update(&self) -> RankOneUpdate {
        RankOneUpdate::new(self.discretize(|x| x - 0.5), self.alpha).expect("nodes are finite")
    }
}

/// Symmetric Nyström matrix of `G` and the discrete `f(x) = x − 1/2`.
///
/// `A_ij = √ωᵢ G(xᵢ, xⱼ) √ωⱼ + δᵢⱼ dᵢ`, `fᵢ = √ωᵢ (xᵢ − 1/2)`. The diagonal
/// term removes the leading error caused by the kernel's kink:
///
/// * midpoint: `dᵢ = −h²/12`. The sampled kernel has eigenvalues
///   `h²/(4 sin²(kh/2)) = 1/k² + h²/12 + O(h⁴k²)`, so the shift leaves an
///   `O(h⁴k⁴)` relative error and commutes with everything else.
/// * Gauss–Legendre: `dᵢ = xᵢ(1 − xᵢ)/2 − Σⱼ ωⱼ G(xᵢ, xⱼ)`, making the rule
///   exact for the row integral `∫G(x, ξ)dξ = x(1 − x)/2`.
///
/// Both corrections are even under `x ↦ 1 − x`, so parity carries over.
pub fn nystrom_build(m: &DirichletModel) -> Result<(SymmetricMatrix, Vec<f64>)> {
    let n = m.order();
    let x = &m.nodes;
    let sw: Vec<f64> = m.weights.iter().map(|&w| libm::sqrt(w)).collect();
    let mut a = RealMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = sw[i] * green_unchecked(x[i], x[j]) * sw[j];
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    match m.quadrature {
        Quadrature::Midpoint => {
            let h = 1.0 / n as f64;
            for i in 0..n {
                a[(i, i)] -= h * h / 12.0;
            }
        }
        Quadrature::GaussLegendre => {
            for i in 0..n {
                let row: f64 = (0..n)
                    .map(|j| m.weights[j] * green_unchecked(x[i], x[j]))
                    .sum();
                a[(i, i)] += 0.5 * x[i] * (1.0 - x[i]) - row;
            }
        }
    }
    Ok((
        SymmetricMatrix::try_from_matrix(a)?,
        m.update().f().to_vec(),
    ))
}

/// `1/(nπ)²`, the `n`-th largest eigenvalue of `A`.
pub fn exact_eigenvalue(n: usize) -> f64 {
    let k = n as f64 * PI;
    1.0 / (k * k)
}

#[derive(Clone, Debug)]
pub struct ModeCheck {
    pub mode: usize,
    pub discrete: f64,
    pub exact: f64,
    pub rel_error: f64,
}

/// Case analysis at `k0 = nπ`, compared with `σ(B)` computed directly.
#[derive(Clone, Debug)]
pub struct WavenumberCase {
    pub mode: usize,
    pub k0: f64,
    /// Discrete eigenvalue standing in for `1/k0²`.
    pub lambda0: f64,
    pub report: CaseReport,
    pub overlap_analytic: f64,
    /// Eigenvalues of `B` within `1e-3·λ0` of `λ0`.
    pub perturbed_within_window: usize,
    /// Distance from `λ0` to the nearest eigenvalue of `B`.
    pub nearest_perturbed_distance: f64,
    /// Half the distance from `λ0` to its nearest neighbour in `σ(A)`.
    pub half_gap: f64,
}

/// Oracle comparison restricted to the resolved part of the spectrum.
#[derive(Clone, Debug)]
pub struct ResolvedVerification {
    pub modes: usize,
    /// Midpoint of the gap below the last resolved mode.
    pub lower_bound: f64,
    pub report: OracleReport,
}

#[derive(Clone, Debug)]
pub struct SecularRoot {
    pub lambda: f64,
    pub k: f64,
}

/// Everything the worked example needs, built once: the discretized `A`,
/// its decomposition, and the spectrum of `B`.
#[derive(Clone, Debug)]
pub struct DirichletStudy {
    model: DirichletModel,
    problem: KreinProblem,
    perturbed: SpectralDecomposition,
}

impl DirichletStudy {
    /// Relative window used when counting eigenvalues of `B` at `λ0`.
    pub const MULTIPLICITY_WINDOW: f64 = 1e-3;

    pub fn new(model: DirichletModel, tol: Tolerances) -> Result<Self> {
        let (a, _) = nystrom_build(&model)?;
        let problem = KreinProblem::new(a, model.update(), tol)?;
        let perturbed = symmetric_eig(&problem.perturbed()?)?;
        Ok(Self {
            model,
            problem,
            perturbed,
        })
    }

    pub fn model(&self) -> &DirichletModel {
        &self.model
    }

    pub fn problem(&self) -> &KreinProblem {
        &self.problem
    }

    pub fn perturbed_spectrum(&self) -> &[f64] {
        self.perturbed.eigenvalues()
    }

    /// `n`-th largest discrete eigenvalue of `A`.
    pub fn discrete_eigenvalue(&self, mode: usize) -> Result<f64> {
        let v = self.problem.decomposition().eigenvalues();
        if mode == 0 || mode > v.len() {
            return Err(Error::InvalidArgument("mode index out of range"));
        }
        Ok(v[v.len() - mode])
    }

    pub fn mode_checks(&self, count: usize) -> Result<Vec<ModeCheck>> {
        (1..=count)
            .map(|mode| {
                let discrete = self.discrete_eigenvalue(mode)?;
                let exact = exact_eigenvalue(mode);
                Ok(ModeCheck {
                    mode,
                    discrete,
                    exact,
                    rel_error: libm::fabs(discrete - exact) / exact,
                })
            })
            .collect()
    }

    /// Number of leading modes whose eigenvalues agree with `1/(nπ)²` to
    /// `rel_tol`.
    pub fn resolved_modes(&self, rel_tol: f64) -> usize {
        let n = self.model.order();
        (1..=n)
            .take_while(|&mode| {
                let d = self.discrete_eigenvalue(mode).unwrap_or(f64::NAN);
                libm::fabs(d - exact_eigenvalue(mode)) <= rel_tol * exact_eigenvalue(mode)
            })
            .count()
    }

    pub fn secular(&self) -> Result<SecularFunction> {
        self.problem.secular()
    }

    /// Matrix-side `w(1/k²)`.
    pub fn secular_at_k(&self, k: f64) -> Result<f64> {
        let p = WavenumberPoint::from_k(k)?;
        self.secular()?.eval(p.lambda)
    }

    pub fn at_mode(&self, mode: usize) -> Result<WavenumberCase> {
        let lambda0 = self.discrete_eigenvalue(mode)?;
        let report = self.problem.classify(lambda0)?;
        let window = Self::MULTIPLICITY_WINDOW * lambda0;
        let b = self.perturbed.eigenvalues();
        let perturbed_within_window = b
            .iter()
            .filter(|&&mu| libm::fabs(mu - lambda0) <= window)
            .count();
        let nearest_perturbed_distance = b
            .iter()
            .fold(f64::INFINITY, |m, &mu| m.min(libm::fabs(mu - lambda0)));
        let a = self.problem.decomposition().eigenvalues();
        let gap = a
            .iter()
            .filter(|&&mu| libm::fabs(mu - lambda0) > self.problem.cluster_tol())
            .fold(f64::INFINITY, |m, &mu| m.min(libm::fabs(mu - lambda0)));
        let k0 = mode as f64 * PI;
        Ok(WavenumberCase {
            mode,
            k0,
            lambda0,
            report,
            overlap_analytic: super::kernels::overlap_analytic(k0)?,
            perturbed_within_window,
            nearest_perturbed_distance,
            half_gap: 0.5 * gap,
        })
    }

    /// Oracle comparison over the leading modes that agree with `1/(nπ)²` to
    /// `rel_tol`. Near the grid's Nyquist limit the discrete spectrum
    /// crowds below any fixed cluster tolerance, so it is left out.
    pub fn verify_resolved(&self, rel_tol: f64) -> Result<ResolvedVerification> {
        let modes = self.resolved_modes(rel_tol);
        if modes == 0 {
            return Err(Error::InvalidArgument("no resolved modes to verify"));
        }
        let lower_bound = match self.discrete_eigenvalue(modes + 1) {
            Ok(next) => 0.5 * (next + self.discrete_eigenvalue(modes)?),
            Err(_) => f64::NEG_INFINITY,
        };
        Ok(ResolvedVerification {
            modes,
            lower_bound,
            report: verify_window(&self.problem, lower_bound, f64::INFINITY)?,
        })
    }

    /// New eigenvalues of `B`, with the matching wavenumbers `k = 1/√λ`
    /// where `λ > 0`.
    pub fn new_roots(&self) -> Result<Vec<SecularRoot>> {
        Ok(self
            .problem
            .new_eigenvalues()?
            .into_iter()
            .map(|lambda| SecularRoot {
                lambda,
                k: if lambda > 0.0 {
                    1.0 / libm::sqrt(lambda)
                } else {
                    f64::NAN
                },
            })
            .collect())
    }
}
