//! Turns scenarios into reports.

use std::f64::consts::PI;
use std::path::PathBuf;

use krein_core::dirichlet::{eigenfunction_b, DirichletModel, DirichletStudy, WavenumberPoint};
use krein_core::eigcore::SymmetricMatrix;
use krein_core::krein::{
    verify_problem, CaseTag, KreinProblem, RankOneUpdate, SecularFunction, Tolerances,
};
use krein_core::Error as CoreError;

use crate::error::CliError;
use crate::report::{
    ClassifyEntry, CurvePoint, ModeEntry, Report, RootEntry, Samples, VerifyReport,
};
use crate::scenario::{Action, DirichletScenario, Format, MatrixScenario, Scenario};

/// Modes whose eigenvalues match `1/(nπ)²` to this count as resolved.
pub const RESOLVED_REL_TOL: f64 = 1e-4;
/// At most this many leading modes are classified in a Dirichlet run.
pub const MAX_CLASSIFIED_MODES: usize = 10;
pub const CURVE_SAMPLES: usize = 600;
pub const EIGENFUNCTION_SAMPLES: usize = 101;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub out: PathBuf,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    /// Overrides the cluster tolerance.
    pub tol: Option<f64>,
}

impl RunOptions {
    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Input(format!(
                    "--tol: must be positive and finite, got {t}"
                )));
            }
        }
        Ok(Tolerances {
            cluster_tol: self.tol,
            ..Tolerances::default()
        })
    }
}

pub fn build_report(scenario: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    let tol = opts.tolerances()?;
    let seed = opts.seed.or(scenario.seed());
    match scenario {
        Scenario::Matrix(m) => matrix_report(m, tol, seed),
        Scenario::Dirichlet(d) => dirichlet_report(d, tol, seed),
    }
}

/// Builds the report, writes it, and fails with an oracle error if any
/// requested comparison disagreed.
pub fn execute(scenario: &Scenario, opts: &RunOptions) -> Result<(Report, Vec<PathBuf>), CliError> {
    let report = build_report(scenario, opts)?;
    let format = opts.format.or(scenario.format()).unwrap_or_default();
    let files = report.write(&opts.out, format)?;
    Ok((report, files))
}

fn core(context: &'static str) -> impl Fn(CoreError) -> CliError {
    move |e| CliError::from_core(context, e)
}

fn matrix_report(
    m: &MatrixScenario,
    tol: Tolerances,
    seed: Option<u64>,
) -> Result<Report, CliError> {
    if m.n == 0 {
        return Err(CliError::Input("n: must be at least 1".into()));
    }
    if m.entries.len() != m.n * m.n {
        return Err(CliError::Input(format!(
            "entries: expected {} values for n = {}, found {}",
            m.n * m.n,
            m.n,
            m.entries.len()
        )));
    }
    if m.f.len() != m.n {
        return Err(CliError::Input(format!(
            "f: expected {} components, found {}",
            m.n,
            m.f.len()
        )));
    }
    let a = SymmetricMatrix::new(m.n, m.entries.clone()).map_err(core("entries"))?;
    let u = RankOneUpdate::new(m.f.clone(), m.c).map_err(core("f"))?;
    if !m.c.is_finite() {
        return Err(CliError::Input("c: must be finite".into()));
    }
    let problem = KreinProblem::new(a, u, tol).map_err(core("matrix"))?;

    let mut report = empty_report("matrix", seed, problem.cluster_tol());
    if m.actions.contains(&Action::Classify) {
        let reports = match &m.lambda0 {
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    problem
                        .classify(l)
                        .map_err(|e| CliError::from_core(&format!("lambda0[{i}]"), e))
                })
                .collect::<Result<Vec<_>, _>>()?,
            None => problem.classify_all().map_err(core("classify"))?,
        };
        report.classify = Some(
            reports
                .iter()
                .map(|r| ClassifyEntry {
                    lambda0: r.lambda0,
                    case: r.case.as_str().to_owned(),
                    overlap: r.overlap,
                    regular_value: r.regular_value,
                    multiplicity_before: r.multiplicity_before,
                    multiplicity_after: r.multiplicity_after,
                    predicted_projector: (&r.predicted_projector).into(),
                })
                .collect(),
        );
    }
    if m.actions.contains(&Action::Roots) {
        report.roots = Some(root_entries(
            &problem,
            problem.new_eigenvalues().map_err(core("roots"))?,
        )?);
    }
    if m.actions.contains(&Action::Verify) {
        let v = verify_problem(&problem).map_err(core("verify"))?;
        report.verify = Some(VerifyReport::new(&v, None));
    }
    if m.actions.contains(&Action::SecularCurve) {
        report.secular_curve = Some(matrix_curve(
            &problem.secular().map_err(core("secular-curve"))?,
        ));
    }
    report.passed = report.verify.as_ref().is_none_or(|v| v.passed);
    Ok(report)
}

fn empty_report(kind: &'static str, seed: Option<u64>, cluster_tol: f64) -> Report {
    Report {
        kind,
        seed,
        cluster_tol,
        alpha: None,
        nodes: None,
        resolved_modes: None,
        classify: None,
        modes: None,
        roots: None,
        verify: None,
        secular_curve: None,
        samples: Vec::new(),
        passed: true,
    }
}

fn root_entries(problem: &KreinProblem, roots: Vec<f64>) -> Result<Vec<RootEntry>, CliError> {
    let b = problem.perturbed().map_err(core("roots"))?;
    roots
        .into_iter()
        .map(|lambda| {
            let v = problem.eigenvector_at_root(lambda).map_err(core("roots"))?;
            let bv = b.matvec(&v);
            let residual = bv
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - lambda * y).powi(2))
                .sum::<f64>()
                .sqrt();
            Ok(RootEntry {
                lambda,
                k: (lambda > 0.0).then(|| 1.0 / lambda.sqrt()),
                residual,
            })
        })
        .collect()
}

/// Uniform grid in `λ` covering every pole and root, minus points within
/// `1e-6` of the grid span from a pole.
fn matrix_curve(s: &SecularFunction) -> Vec<CurvePoint> {
    let poles = s.poles();
    let reach = s.coupling().abs() * s.weights().iter().sum::<f64>();
    let (lo, hi) = match (poles.first(), poles.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (-1.0, 1.0),
    };
    let pad = 0.25 * (hi - lo).max(reach).max(1.0);
    let (lo, hi) = (lo - pad - reach, hi + pad + reach);
    let guard = 1e-6 * (hi - lo);
    (0..=CURVE_SAMPLES)
        .filter_map(|i| {
            let lambda = lo + (hi - lo) * i as f64 / CURVE_SAMPLES as f64;
            if poles.iter().any(|p| (p - lambda).abs() <= guard) {
                return None;
            }
            let w = s.eval(lambda).ok()?;
            Some(CurvePoint {
                k: (lambda > 0.0).then(|| 1.0 / lambda.sqrt()),
                lambda,
                w,
            })
        })
        .collect()
}

pub fn dirichlet_study(
    alpha: f64,
    nodes: usize,
    tol: Tolerances,
) -> Result<DirichletStudy, CliError> {
    let model = DirichletModel::new(alpha, nodes).map_err(|e| match e {
        CoreError::InvalidArgument(msg) if msg.contains("nodes") => {
            CliError::Input(format!("N: {msg}"))
        }
        other => CliError::from_core("alpha", other),
    })?;
    DirichletStudy::new(model, tol).map_err(core("dirichlet"))
}

pub fn mode_entry(study: &DirichletStudy, mode: usize) -> Result<ModeEntry, CliError> {
    let c = study.at_mode(mode).map_err(core("classify"))?;
    let tol = study.problem().cluster_tol();
    let oracle_multiplicity = study
        .perturbed_spectrum()
        .iter()
        .filter(|&&mu| (mu - c.lambda0).abs() <= tol)
        .count();
    Ok(ModeEntry {
        mode,
        k0: c.k0,
        lambda0: c.lambda0,
        case: c.report.case.as_str().to_owned(),
        overlap: c.report.overlap,
        overlap_analytic: c.overlap_analytic,
        regular_value: c.report.regular_value,
        multiplicity_before: c.report.multiplicity_before,
        multiplicity_after: c.report.multiplicity_after,
        oracle_multiplicity,
        perturbed_within_window: c.perturbed_within_window,
        nearest_perturbed_distance: c.nearest_perturbed_distance,
        half_gap: c.half_gap,
        removed: c.nearest_perturbed_distance > c.half_gap,
    })
}

fn dirichlet_report(
    d: &DirichletScenario,
    tol: Tolerances,
    seed: Option<u64>,
) -> Result<Report, CliError> {
    let study = dirichlet_study(d.alpha, d.nodes, tol)?;
    let resolved = study.resolved_modes(RESOLVED_REL_TOL);
    let mut report = empty_report("dirichlet", seed, study.problem().cluster_tol());
    report.alpha = Some(d.alpha);
    report.nodes = Some(d.nodes);
    report.resolved_modes = Some(resolved);

    if d.actions.contains(&Action::Classify) {
        let modes = (1..=resolved.min(MAX_CLASSIFIED_MODES))
            .map(|m| mode_entry(&study, m))
            .collect::<Result<Vec<_>, _>>()?;
        for m in modes.iter().filter(|m| m.case == CaseTag::C.as_str()) {
            report.samples.push(eigenfunction_samples(m.mode, m.k0)?);
        }
        report.modes = Some(modes);
    }
    if d.actions.contains(&Action::Roots) {
        let roots = study
            .new_roots()
            .map_err(core("roots"))?
            .into_iter()
            .map(|r| r.lambda)
            .collect();
        report.roots = Some(root_entries(study.problem(), roots)?);
    }
    if d.actions.contains(&Action::Verify) {
        let v = study
            .verify_resolved(RESOLVED_REL_TOL)
            .map_err(core("verify"))?;
        report.verify = Some(VerifyReport::new(&v.report, Some(v.lower_bound)));
    }
    if d.actions.contains(&Action::SecularCurve) {
        let s = study.secular().map_err(core("secular-curve"))?;
        report.secular_curve = Some(dirichlet_curve(&s, resolved));
    }
    report.passed = report.verify.as_ref().is_none_or(|v| v.passed);
    Ok(report)
}

/// `w(1/k²)` on a uniform `k` grid up to the last resolved mode, skipping
/// the neighbourhoods of the poles at `k = 2mπ`.
fn dirichlet_curve(s: &SecularFunction, resolved: usize) -> Vec<CurvePoint> {
    let k_max = PI * resolved.clamp(2, 12) as f64;
    (1..=CURVE_SAMPLES)
        .filter_map(|i| {
            let k = k_max * i as f64 / CURVE_SAMPLES as f64;
            if (0.5 * k).sin().abs() < 1e-3 {
                return None;
            }
            let p = WavenumberPoint::from_k(k).ok()?;
            let w = s.eval(p.lambda).ok()?;
            Some(CurvePoint {
                k: Some(k),
                lambda: p.lambda,
                w,
            })
        })
        .collect()
}

/// Samples of the eigenfunction `B` gains at `k0`.
fn eigenfunction_samples(mode: usize, k0: f64) -> Result<Samples, CliError> {
    let x: Vec<f64> = (0..EIGENFUNCTION_SAMPLES)
        .map(|i| i as f64 / (EIGENFUNCTION_SAMPLES - 1) as f64)
        .collect();
    let value = x
        .iter()
        .map(|&x| eigenfunction_b(k0, x))
        .collect::<Result<Vec<_>, _>>()
        .map_err(core("eigenfunction"))?;
    Ok(Samples {
        name: format!("eigenfunction_mode{mode}"),
        x,
        value,
    })
}
