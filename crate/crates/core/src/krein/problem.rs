use alloc::vec;
use alloc::vec::Vec;

use crate::eigcore::{
    cluster_spectrum, locate_cluster, symmetric_eig, ComplexMatrix, EigenCluster,
    SpectralDecomposition, SymmetricMatrix,
};
use crate::krein::classify::{classify_local, CaseReport, LocalSpectrum, Tolerances};
use crate::krein::laurent::{laurent_from, LaurentData};
use crate::krein::secular::{build_secular, find_new_eigenvalues, SecularFunction};
use crate::krein::RankOneUpdate;
use crate::{Complex64, Error, Result};

/// `A`, its eigendecomposition and an update `B = A + c·f fᵀ`, bundled so
/// the decomposition is computed once and shared by every query.
#[derive(Clone, Debug)]
pub struct KreinProblem {
    a: SymmetricMatrix,
    decomposition: SpectralDecomposition,
    clusters: Vec<EigenCluster>,
    update: RankOneUpdate,
    tol: Tolerances,
    cluster_tol: f64,
}

impl KreinProblem {
    pub fn new(a: SymmetricMatrix, update: RankOneUpdate, tol: Tolerances) -> Result<Self> {
        if update.f().len() != a.order() {
            return Err(Error::DimensionMismatch {
                expected: a.order(),
                found: update.f().len(),
            });
        }
        let decomposition = symmetric_eig(&a)?;
        let cluster_tol = tol
            .cluster_tol
            .unwrap_or_else(|| decomposition.default_cluster_tol());
        let clusters = cluster_spectrum(&decomposition, cluster_tol)?;
        Ok(Self {
            a,
            decomposition,
            clusters,
            update,
            tol,
            cluster_tol,
        })
    }

    pub fn operator(&self) -> &SymmetricMatrix {
        &self.a
    }

    pub fn update(&self) -> &RankOneUpdate {
        &self.update
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    pub fn clusters(&self) -> &[EigenCluster] {
        &self.clusters
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// `B = A + c·f fᵀ`.
    pub fn perturbed(&self) -> Result<SymmetricMatrix> {
        self.update.apply(&self.a)
    }

    pub fn laurent_at(&self, lambda0: f64) -> Result<LaurentData> {
        laurent_from(&self.decomposition, lambda0, self.cluster_tol)
    }

    /// Secular function with weights below `1e-8·(f|f)` (or the configured
    /// overlap tolerance) treated as zero, consistently with [`Self::classify`].
    pub fn secular(&self) -> Result<SecularFunction> {
        build_secular(
            &self.decomposition,
            &self.update,
            self.cluster_tol,
            self.tol.overlap_tol_for(&self.update),
        )
    }

    /// Case analysis at `λ0`. Works in the eigenbasis, so it costs `O(n²·m)`
    /// and never forms the reduced resolvent.
    pub fn classify(&self, lambda0: f64) -> Result<CaseReport> {
        let d = &self.decomposition;
        let values = d.eigenvalues();
        let members = match locate_cluster(&self.clusters, values, lambda0, self.cluster_tol)? {
            Some(ci) => self.clusters[ci].members.clone(),
            None => {
                let (idx, _) = d.nearest(Complex64::new(lambda0, 0.0));
                return Err(Error::NotAnEigenvalue {
                    lambda0,
                    nearest: values[idx],
                    tol: self.cluster_tol,
                });
            }
        };
        let beta = d.coefficients(self.update.f());
        let mut p_coeff = vec![0.0; values.len()];
        let mut r_coeff = vec![0.0; values.len()];
        let mut r_norm: f64 = 0.0;
        for (k, &mu) in values.iter().enumerate() {
            if members.contains(&k) {
                p_coeff[k] = beta[k];
            } else {
                let g = 1.0 / (lambda0 - mu);
                r_coeff[k] = beta[k] * g;
                r_norm = r_norm.max(libm::fabs(g));
            }
        }
        let q = d.vectors();
        let local = LocalSpectrum {
            lambda0,
            multiplicity: members.len(),
            projector: d.projector(members),
            pf: q.matvec(&p_coeff),
            rf: q.matvec(&r_coeff),
            r_norm,
        };
        let tol = Tolerances {
            cluster_tol: Some(self.cluster_tol),
            ..self.tol
        };
        classify_local(local, &self.update, &tol)
    }

    /// Classification at every eigenvalue cluster of `A`, ascending.
    pub fn classify_all(&self) -> Result<Vec<CaseReport>> {
        self.clusters
            .iter()
            .map(|c| self.classify(c.lambda0))
            .collect()
    }

    /// Zeros of `w` away from `σ(A)`: the eigenvalues `B` acquires.
    pub fn new_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(find_new_eigenvalues(
            &self.secular()?,
            self.decomposition.eigenvalues(),
            self.cluster_tol,
            self.tol.root_tol,
        ))
    }

    /// `v = (λ* − A)⁻¹f / ‖(λ* − A)⁻¹f‖`, the eigenvector of `B` belonging to
    /// a zero `λ*` of `w`.
    pub fn eigenvector_at_root(&self, root: f64) -> Result<Vec<f64>> {
        let g = self.decomposition.resolvent_apply(
            Complex64::new(root, 0.0),
            self.update.f(),
            self.cluster_tol,
        )?;
        let norm = libm::sqrt(g.iter().map(|z| z.re * z.re).sum());
        if !(norm > 0.0) {
            return Err(Error::InvalidArgument(
                "update vector has no component off the eigenspace",
            ));
        }
        Ok(g.into_iter().map(|z| z.re / norm).collect())
    }

    /// The Krein correction `C = (λ − B)⁻¹ − (λ − A)⁻¹`:
    ///
    /// `C = c·(λ − A)⁻¹f (f|(λ − A)⁻¹ / w(λ)`
    ///
    /// `(f|` is the bilinear pairing, so for complex `λ` no conjugation enters.
    pub fn resolvent_correction(&self, lambda: Complex64) -> Result<ComplexMatrix> {
        let g = self
            .decomposition
            .resolvent_apply(lambda, self.update.f(), self.cluster_tol)?;
        let pairing = self
            .update
            .f()
            .iter()
            .zip(&g)
            .fold(Complex64::new(0.0, 0.0), |acc, (&fi, &gi)| acc + gi * fi);
        let w = Complex64::new(1.0, 0.0) - pairing * self.update.c();
        let modulus = libm::hypot(w.re, w.im);
        if modulus <= self.tol.root_tol {
            return Err(Error::EigenvalueOfPerturbed {
                re: lambda.re,
                im: lambda.im,
                modulus,
            });
        }
        Ok(ComplexMatrix::outer(&g, &g).scale(Complex64::new(self.update.c(), 0.0) / w))
    }
}

pub fn krein_resolvent_correction(
    a: &SymmetricMatrix,
    u: &RankOneUpdate,
    lambda: Complex64,
) -> Result<ComplexMatrix> {
    KreinProblem::new(a.clone(), u.clone(), Tolerances::default())?.resolvent_correction(lambda)
}

pub fn eigenvector_at_root(a: &SymmetricMatrix, u: &RankOneUpdate, root: f64) -> Result<Vec<f64>> {
    KreinProblem::new(a.clone(), u.clone(), Tolerances::default())?.eigenvector_at_root(root)
}

pub fn classify_case(
    a: &SymmetricMatrix,
    u: &RankOneUpdate,
    lambda0: f64,
    tol: Tolerances,
) -> Result<CaseReport> {
    KreinProblem::new(a.clone(), u.clone(), tol)?.classify(lambda0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigcore::Magnitude;

    fn problem(d: &[f64], f: &[f64], c: f64) -> KreinProblem {
        KreinProblem::new(
            SymmetricMatrix::from_diagonal(d).unwrap(),
            RankOneUpdate::new(f.to_vec(), c).unwrap(),
            Tolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn scalar_correction() {
        let p = problem(&[0.0], &[1.0], 1.0);
        let c = p.resolvent_correction(Complex64::new(2.0, 0.0)).unwrap();
        assert!((c[(0, 0)] - 0.5).magnitude() < 1e-15);
        let z = problem(&[0.0, 1.0], &[1.0, 1.0], 0.0);
        assert_eq!(
            z.resolvent_correction(Complex64::new(3.0, 1.0))
                .unwrap()
                .max_abs(),
            0.0
        );
    }

    #[test]
    fn correction_errors() {
        let p = problem(&[0.0], &[1.0], 1.0);
        assert!(matches!(
            p.resolvent_correction(Complex64::new(1.0, 0.0)),
            Err(Error::EigenvalueOfPerturbed { .. })
        ));
        assert!(matches!(
            p.resolvent_correction(Complex64::new(0.0, 0.0)),
            Err(Error::ResolventAtSpectrum { .. })
        ));
    }

    #[test]
    fn eigenvectors_at_roots() {
        let p = problem(&[0.0], &[1.0], 1.0);
        assert_eq!(p.eigenvector_at_root(1.0).unwrap(), vec![1.0]);

        let p = problem(&[0.0, 2.0], &[1.0, 1.0], 1.0);
        let root = 2.0 + core::f64::consts::SQRT_2;
        let v = p.eigenvector_at_root(root).unwrap();
        let b = p.perturbed().unwrap();
        let bv = b.matvec(&v);
        let res: f64 = bv
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - root * y).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(res <= 1e-10);
        let want = [1.0 / root, 1.0 / core::f64::consts::SQRT_2];
        let wn = (want[0] * want[0] + want[1] * want[1]).sqrt();
        assert!((v[0] - want[0] / wn).abs() < 1e-14 && (v[1] - want[1] / wn).abs() < 1e-14);
    }

    #[test]
    fn classify_rejects_resolvent_points() {
        let p = problem(&[0.0, 1.0], &[1.0, 1.0], 1.0);
        assert!(
            matches!(p.classify(0.5), Err(Error::NotAnEigenvalue { nearest, .. }) if nearest == 0.0 || nearest == 1.0)
        );
    }
}
