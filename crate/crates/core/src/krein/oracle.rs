//! Brute-force cross-check of the perturbation predictions against an
//! eigendecomposition of `B` itself.

use alloc::vec::Vec;

use crate::eigcore::{symmetric_eig, SpectralDecomposition, SymmetricMatrix};
use crate::krein::{CaseTag, KreinProblem, RankOneUpdate, Tolerances};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// Multiplicity and projector at an eigenvalue cluster of `A`.
    Cluster,
    /// A predicted new eigenvalue of `B`.
    Root,
    /// Predicted multiplicities plus new roots account for all of `σ(B)`.
    Count,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Cluster => "cluster",
            CheckKind::Root => "root",
            CheckKind::Count => "count",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleCheck {
    pub kind: CheckKind,
    pub lambda: f64,
    pub case: Option<CaseTag>,
    pub overlap: Option<f64>,
    pub regular_value: Option<f64>,
    pub multiplicity_before: usize,
    /// Predicted multiplicity (or predicted count for [`CheckKind::Count`]).
    pub multiplicity_after: usize,
    /// What the eigendecomposition of `B` shows.
    pub oracle_multiplicity: usize,
    pub projector_frobenius_error: Option<f64>,
    /// Numerical failure that prevented a prediction, if any.
    pub error: Option<crate::Error>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub checks: Vec<OracleCheck>,
    pub passed: bool,
}

impl OracleReport {
    pub fn failures(&self) -> impl Iterator<Item = &OracleCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn count_near(values: &[f64], x: f64, tol: f64) -> Vec<usize> {
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| libm::fabs(v - x) <= tol)
        .map(|(i, _)| i)
        .collect()
}

/// Compares every prediction of [`KreinProblem`] with `σ(B)` computed
/// directly. Numerical failures are recorded as failed checks, never raised.
pub fn verify_problem(problem: &KreinProblem) -> Result<OracleReport> {
    verify_window(problem, f64::NEG_INFINITY, f64::INFINITY)
}

/// [`verify_problem`] restricted to clusters and roots in `[lo, hi]`. The
/// count check then compares predicted and oracle eigenvalues in the window,
/// so `lo` and `hi` should sit in spectral gaps.
pub fn verify_window(problem: &KreinProblem, lo: f64, hi: f64) -> Result<OracleReport> {
    if !(lo < hi) {
        return Err(crate::Error::InvalidArgument(
            "verification window is empty",
        ));
    }
    let b = problem.perturbed()?;
    let oracle = symmetric_eig(&b)?;
    Ok(verify_with(problem, &oracle, lo, hi))
}

pub fn verify_against_oracle(
    a: &SymmetricMatrix,
    u: &RankOneUpdate,
    cluster_tol: f64,
) -> Result<OracleReport> {
    let tol = Tolerances {
        cluster_tol: Some(cluster_tol),
        ..Tolerances::default()
    };
    verify_problem(&KreinProblem::new(a.clone(), u.clone(), tol)?)
}

fn verify_with(
    problem: &KreinProblem,
    oracle: &SpectralDecomposition,
    lo: f64,
    hi: f64,
) -> OracleReport {
    let tol = problem.cluster_tol();
    let projector_tol = problem.tolerances().projector_tol;
    let values = oracle.eigenvalues();
    let inside = |x: f64| lo <= x && x <= hi;
    let mut checks = Vec::new();
    let mut predicted_total = 0;

    for cluster in problem.clusters().iter().filter(|c| inside(c.lambda0)) {
        let lambda0 = cluster.lambda0;
        let near = count_near(values, lambda0, tol);
        let mut check = OracleCheck {
            kind: CheckKind::Cluster,
            lambda: lambda0,
            case: None,
            overlap: None,
            regular_value: None,
            multiplicity_before: cluster.multiplicity(),
            multiplicity_after: 0,
            oracle_multiplicity: near.len(),
            projector_frobenius_error: None,
            error: None,
            passed: false,
        };
        match problem.classify(lambda0) {
            Ok(report) => {
                let oracle_projector = oracle.projector(near.iter().copied());
                let err = report
                    .predicted_projector
                    .sub(&oracle_projector)
                    .frobenius();
                predicted_total += report.multiplicity_after;
                check.case = Some(report.case);
                check.overlap = Some(report.overlap);
                check.regular_value = report.regular_value;
                check.multiplicity_after = report.multiplicity_after;
                check.projector_frobenius_error = Some(err);
                check.passed = report.multiplicity_after == near.len() && err <= projector_tol;
            }
            Err(e) => check.error = Some(e),
        }
        checks.push(check);
    }

    match problem.new_eigenvalues() {
        Ok(roots) => {
            let roots: Vec<f64> = roots.into_iter().filter(|&r| inside(r)).collect();
            predicted_total += roots.len();
            for root in roots {
                let hits = count_near(values, root, tol).len();
                checks.push(OracleCheck {
                    kind: CheckKind::Root,
                    lambda: root,
                    case: None,
                    overlap: None,
                    regular_value: None,
                    multiplicity_before: 0,
                    multiplicity_after: 1,
                    oracle_multiplicity: hits,
                    projector_frobenius_error: None,
                    error: None,
                    passed: hits == 1,
                });
            }
        }
        Err(e) => checks.push(OracleCheck {
            kind: CheckKind::Root,
            lambda: f64::NAN,
            case: None,
            overlap: None,
            regular_value: None,
            multiplicity_before: 0,
            multiplicity_after: 0,
            oracle_multiplicity: 0,
            projector_frobenius_error: None,
            error: Some(e),
            passed: false,
        }),
    }

    let before = problem
        .decomposition()
        .eigenvalues()
        .iter()
        .filter(|&&x| inside(x))
        .count();
    let oracle_total = values.iter().filter(|&&x| inside(x)).count();
    checks.push(OracleCheck {
        kind: CheckKind::Count,
        lambda: f64::NAN,
        case: None,
        overlap: None,
        regular_value: None,
        multiplicity_before: before,
        multiplicity_after: predicted_total,
        oracle_multiplicity: oracle_total,
        projector_frobenius_error: None,
        error: None,
        passed: predicted_total == oracle_total,
    });

    let passed = checks.iter().all(|c| c.passed);
    OracleReport { checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn diagonal_case_a_passes() {
        let a = SymmetricMatrix::from_diagonal(&[1.0, 1.0]).unwrap();
        let u = RankOneUpdate::new(vec![1.0, 0.0], 1.0).unwrap();
        let r = verify_against_oracle(&a, &u, 1e-9).unwrap();
        assert!(r.passed, "{:?}", r.checks);
        assert_eq!(r.checks[0].case, Some(CaseTag::A));
        // the lost dimension reappears as the root λ = 2
        assert!(r
            .checks
            .iter()
            .any(|c| c.kind == CheckKind::Root && (c.lambda - 2.0).abs() < 1e-12));
    }

    #[test]
    fn diagonal_case_c_passes() {
        let a = SymmetricMatrix::from_diagonal(&[0.0, 1.0, 2.0]).unwrap();
        let u = RankOneUpdate::new(vec![0.0, 1.0, 1.0], -2.0 / 3.0).unwrap();
        let r = verify_against_oracle(&a, &u, 1e-9).unwrap();
        assert!(r.passed, "{:?}", r.checks);
        let at_zero = &r.checks[0];
        assert_eq!(at_zero.case, Some(CaseTag::C));
        assert_eq!(at_zero.oracle_multiplicity, 2);
        assert!(at_zero.projector_frobenius_error.unwrap() <= 1e-8);
    }
}
