use alloc::vec::Vec;
use core::fmt;

use crate::eigcore::{dot, RealMatrix};
use crate::krein::{LaurentData, RankOneUpdate};
use crate::{Error, Result};

/// How the perturbation acts on the eigenvalue `λ0`, read off the Laurent
/// expansion of `w` at `λ0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `w` has a pole: `c·(f|Pf) ≠ 0`. One dimension is lost.
    A,
    /// `w` is regular and non-zero at `λ0`. The eigenspace survives unchanged.
    B,
    /// `w` is regular and vanishes at `λ0`. One dimension is gained.
    C,
}

impl CaseTag {
    /// Change of `dim P` under the perturbation.
    pub fn rank_change(self) -> isize {
        match self {
            CaseTag::A => -1,
            CaseTag::B => 0,
            CaseTag::C => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::A => "A",
            CaseTag::B => "B",
            CaseTag::C => "C",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub lambda0: f64,
    pub case: CaseTag,
    /// `(f|P f)`.
    pub overlap: f64,
    /// `D = 1 − c·(f|R f)`, the value of `w` at `λ0` when it is regular.
    pub regular_value: Option<f64>,
    pub multiplicity_before: usize,
    pub multiplicity_after: usize,
    pub predicted_projector: RealMatrix,
}

/// Thresholds turning the exact conditions of the case analysis into
/// numerical decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Defaults to `1e-9·(1 + ρ(A))`.
    pub cluster_tol: Option<f64>,
    /// Defaults to `1e-8·(f|f)`.
    pub overlap_tol: Option<f64>,
    pub d_tol: f64,
    pub root_tol: f64,
    /// Frobenius agreement demanded of predicted projectors.
    pub projector_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cluster_tol: None,
            overlap_tol: None,
            d_tol: 1e-6,
            root_tol: 1e-12,
            projector_tol: 1e-7,
        }
    }
}

impl Tolerances {
    pub const OVERLAP_REL: f64 = 1e-8;

    pub fn overlap_tol_for(&self, u: &RankOneUpdate) -> f64 {
        self.overlap_tol.unwrap_or(Self::OVERLAP_REL * u.norm_sq())
    }
}

/// The pieces of the Laurent data that the case analysis consumes.
pub(crate) struct LocalSpectrum {
    pub lambda0: f64,
    pub multiplicity: usize,
    pub projector: RealMatrix,
    /// `P f`.
    pub pf: Vec<f64>,
    /// `R f`.
    pub rf: Vec<f64>,
    /// Operator-norm bound of `R`.
    pub r_norm: f64,
}

/// Decides the case at `λ0` from precomputed Laurent data.
pub fn classify_laurent(
    ld: &LaurentData,
    u: &RankOneUpdate,
    tol: &Tolerances,
) -> Result<CaseReport> {
    let local = LocalSpectrum {
        lambda0: ld.lambda0,
        multiplicity: ld.multiplicity,
        projector: ld.projector.clone(),
        pf: ld.projector.matvec(u.f()),
        rf: ld.reduced.matvec(u.f()),
        r_norm: ld.reduced.max_abs(),
    };
    classify_local(local, u, tol)
}

pub(crate) fn classify_local(
    local: LocalSpectrum,
    u: &RankOneUpdate,
    tol: &Tolerances,
) -> Result<CaseReport> {
    if local.multiplicity == 0 {
        return Err(Error::NotAnEigenvalue {
            lambda0: local.lambda0,
            nearest: f64::NAN,
            tol: tol.cluster_tol.unwrap_or(f64::NAN),
        });
    }
    let f = u.f();
    let overlap = dot(f, &local.pf);
    let overlap_tol = tol.overlap_tol_for(u);

    let (case, regular_value) = if u.is_trivial() {
        (CaseTag::B, Some(1.0))
    } else if libm::fabs(u.c()) * overlap > overlap_tol {
        (CaseTag::A, None)
    } else {
        let d = 1.0 - u.c() * dot(f, &local.rf);
        if libm::fabs(d) > tol.d_tol {
            (CaseTag::B, Some(d))
        } else {
            (CaseTag::C, Some(d))
        }
    };
    let after = local.multiplicity as isize + case.rank_change();
    let predicted_projector = projector_update(
        &local.projector,
        &local.pf,
        &local.rf,
        local.r_norm,
        u,
        case,
    )?;
    Ok(CaseReport {
        lambda0: local.lambda0,
        case,
        overlap,
        regular_value,
        multiplicity_before: local.multiplicity,
        multiplicity_after: after as usize,
        predicted_projector,
    })
}

/// Spectral projector of `B` at `λ0` predicted from `A`'s Laurent data:
///
/// * A: `P − Pf (f|P / (f|Pf)`
/// * B: `P`
/// * C: `P + Rf (f|R / (f|R²f)`
pub fn predicted_projector(
    ld: &LaurentData,
    u: &RankOneUpdate,
    case: CaseTag,
) -> Result<RealMatrix> {
    let pf = ld.projector.matvec(u.f());
    let rf = ld.reduced.matvec(u.f());
    projector_update(&ld.projector, &pf, &rf, ld.reduced.max_abs(), u, case)
}

fn projector_update(
    projector: &RealMatrix,
    pf: &[f64],
    rf: &[f64],
    r_norm: f64,
    u: &RankOneUpdate,
    case: CaseTag,
) -> Result<RealMatrix> {
    match case {
        CaseTag::B => Ok(projector.clone()),
        CaseTag::A => {
            let den = dot(pf, pf);
            if !(den > 0.0) {
                return Err(Error::InvalidArgument("case A requires (f|Pf) > 0"));
            }
            Ok(projector.sub(&RealMatrix::outer(pf, pf).scale(1.0 / den)))
        }
        CaseTag::C => {
            let den = dot(rf, rf);
            if !(den > f64::EPSILON * u.norm_sq() * r_norm * r_norm) {
                return Err(Error::CauchySchwarz(den));
            }
            Ok(projector.add(&RealMatrix::outer(rf, rf).scale(1.0 / den)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigcore::SymmetricMatrix;
    use crate::krein::laurent_at;
    use alloc::vec;

    fn classify(d: &[f64], f: &[f64], c: f64, lambda0: f64) -> CaseReport {
        let a = SymmetricMatrix::from_diagonal(d).unwrap();
        let ld = laurent_at(&a, lambda0, 1e-9).unwrap();
        classify_laurent(
            &ld,
            &RankOneUpdate::new(f.to_vec(), c).unwrap(),
            &Tolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn double_eigenvalue_loses_one() {
        let r = classify(&[1.0, 1.0], &[1.0, 0.0], 1.0, 1.0);
        assert_eq!(r.case, CaseTag::A);
        assert_eq!((r.multiplicity_before, r.multiplicity_after), (2, 1));
        assert_eq!(r.overlap, 1.0);
        assert_eq!(r.regular_value, None);
        let want = RealMatrix::from_row_major(2, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(r.predicted_projector.sub(&want).max_abs() < 1e-15);
    }

    #[test]
    fn tuned_coupling_gains_one() {
        // (f|Rf) = −1 − 1/2 at λ0 = 0, so c = −2/3 makes D vanish.
        let r = classify(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.0], -2.0 / 3.0, 0.0);
        assert_eq!(r.case, CaseTag::C);
        assert_eq!(r.multiplicity_after, 2);
        assert!(r.regular_value.unwrap().abs() < 1e-15);
        assert!((r.predicted_projector.trace() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn orthogonal_generic_coupling_keeps_eigenspace() {
        let r = classify(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.0], 1.0, 0.0);
        assert_eq!(r.case, CaseTag::B);
        assert_eq!(r.multiplicity_after, 1);
        assert!((r.regular_value.unwrap() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn zero_coupling_is_case_b() {
        let r = classify(&[0.0, 1.0], &[1.0, 1.0], 0.0, 0.0);
        assert_eq!(r.case, CaseTag::B);
        assert_eq!(r.regular_value, Some(1.0));
        let r = classify(&[0.0, 1.0], &[0.0, 0.0], 3.0, 0.0);
        assert_eq!(r.case, CaseTag::B);
    }

    #[test]
    fn resolvent_point_is_rejected() {
        let a = SymmetricMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        let ld = laurent_at(&a, 0.5, 1e-9).unwrap();
        let u = RankOneUpdate::new(vec![1.0, 1.0], 1.0).unwrap();
        assert!(matches!(
            classify_laurent(&ld, &u, &Tolerances::default()),
            Err(Error::NotAnEigenvalue { .. })
        ));
    }

    #[test]
    fn case_c_without_remainder_is_cauchy_schwarz_violation() {
        let a = SymmetricMatrix::identity(2).unwrap();
        let ld = laurent_at(&a, 1.0, 1e-9).unwrap();
        let u = RankOneUpdate::new(vec![1.0, 0.0], 1.0).unwrap();
        assert!(matches!(
            predicted_projector(&ld, &u, CaseTag::C),
            Err(Error::CauchySchwarz(_))
        ));
    }
}
