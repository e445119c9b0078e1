//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use krein_cli::suite::{
    cauchy_schwarz_check, interlacing_check, krein_formula_check, laurent_order_check,
    projection_limit_check, run_case_suite, secular_monotonicity_check, CASES,
};
use krein_core::dirichlet::{
    analytic_secular, exact_eigenvalue, DirichletModel, DirichletStudy, WavenumberPoint,
};
use krein_core::krein::{CaseTag, Tolerances};

const N: usize = 400;
const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn study() -> (DirichletStudy, Duration) {
    let t = Instant::now();
    let s =
        DirichletStudy::new(DirichletModel::new(1.0, N).unwrap(), Tolerances::default()).unwrap();
    (s, t.elapsed())
}

fn c1_spectrum(s: &DirichletStudy, elapsed: Duration) -> Outcome {
    let t = Instant::now();
    let checks = s.mode_checks(10).unwrap();
    let elapsed = elapsed + t.elapsed();
    let worst = checks.iter().map(|c| c.rel_error).fold(0.0, f64::max);
    let simple = (1..=10).all(|n| {
        let l = exact_eigenvalue(n);
        s.problem()
            .clusters()
            .iter()
            .any(|c| (c.lambda0 - l).abs() <= 1e-4 * l && c.multiplicity() == 1)
    });
    outcome(
        worst <= 1e-4 && simple && elapsed <= Duration::from_secs(10),
        format!("max rel error {worst:.3e} (n=1..10, N={N}), simple={simple}, {elapsed:.2?}"),
    )
}

fn c2_secular(s: &DirichletStudy) -> Outcome {
    let mut worst: f64 = 0.0;
    for k in [1.3, 2.7, 5.1] {
        let matrix = s.secular_at_k(k).unwrap();
        let half = 0.5 * k;
        let closed = half * half.cos() / half.sin();
        let via_kernel = analytic_secular(WavenumberPoint::from_k(k).unwrap(), 1.0).unwrap();
        worst = worst
            .max((matrix - closed).abs())
            .max((via_kernel - closed).abs());
    }
    outcome(
        worst <= 1e-3,
        format!("max |w(1/k^2) - (k/2)cot(k/2)| = {worst:.3e} at k in {{1.3, 2.7, 5.1}}"),
    )
}

fn c3_removal(s: &DirichletStudy) -> Outcome {
    let c = s.at_mode(2).unwrap();
    let expected = 2.0 / (4.0 * PI * PI);
    let err = (c.report.overlap - expected).abs();
    let passed =
        c.report.case == CaseTag::A && err <= 1e-4 && c.nearest_perturbed_distance > c.half_gap;
    outcome(
        passed,
        format!(
            "case {}, overlap {:.8} (|err| {err:.2e}), nearest eigenvalue of B {:.3e} vs half gap {:.3e}",
            c.report.case.as_str(),
            c.report.overlap,
            c.nearest_perturbed_distance,
            c.half_gap
        ),
    )
}

fn c4_doubling(s: &DirichletStudy) -> Outcome {
    let c = s.at_mode(1).unwrap();
    let window = 1e-3 * c.lambda0;
    let count = s
        .perturbed_spectrum()
        .iter()
        .filter(|&&mu| (mu - c.lambda0).abs() <= window)
        .count();
    outcome(
        c.report.case == CaseTag::C && count >= 2,
        format!(
            "case {}, {count} eigenvalues of B within 1e-3*lambda0",
            c.report.case.as_str()
        ),
    )
}

fn c5_no_new_roots(s: &DirichletStudy) -> Outcome {
    let roots = s.new_roots().unwrap();
    outcome(
        roots.is_empty(),
        format!("{} new eigenvalues outside sigma(A) clusters", roots.len()),
    )
}

fn c6_random_suite() -> Outcome {
    let t = Instant::now();
    let summary = run_case_suite(200, SEED, Tolerances::default());
    let elapsed = t.elapsed();
    let counts: Vec<String> = CASES
        .iter()
        .map(|&c| {
            let (ok, total) = summary.count(c);
            format!("{}: {ok}/{total}", c.as_str())
        })
        .collect();
    let all_match = summary
        .instances
        .iter()
        .all(|o| o.multiplicity_after == o.oracle_multiplicity);
    let passed = summary.passed
        && all_match
        && summary.max_projector_error <= 1e-7
        && summary.instances.len() == 600
        && elapsed <= Duration::from_secs(30);
    outcome(
        passed,
        format!(
            "{}, max projector error {:.2e}, {elapsed:.2?}",
            counts.join(", "),
            summary.max_projector_error
        ),
    )
}

fn c7_krein_formula() -> Outcome {
    let r = krein_formula_check(100, 8, SEED);
    outcome(
        r.passed() && r.instances == 100,
        format!(
            "{} instances (8x8), max deviation {:.2e}",
            r.instances, r.worst
        ),
    )
}

fn c8_properties() -> Outcome {
    let results = [
        laurent_order_check(200, SEED),
        interlacing_check(1000, SEED),
        secular_monotonicity_check(200, SEED),
        cauchy_schwarz_check(200, SEED),
        projection_limit_check(200, SEED),
    ];
    let passed = results.iter().all(|r| r.passed());
    let detail = results
        .iter()
        .map(|r| {
            format!(
                "{} {}/{} (worst {:.2e})",
                r.name,
                r.instances - r.failures,
                r.instances,
                r.worst
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(passed, detail)
}

fn main() -> ExitCode {
    let (s, build) = study();
    let results = [
        ("1 dirichlet spectrum", c1_spectrum(&s, build)),
        ("2 secular identity", c2_secular(&s)),
        ("3 eigenvalue removal", c3_removal(&s)),
        ("4 multiplicity doubling", c4_doubling(&s)),
        ("5 no new eigenvalues", c5_no_new_roots(&s)),
        ("6 randomized oracle suite", c6_random_suite()),
        ("7 krein resolvent formula", c7_krein_formula()),
        ("8 property suite", c8_properties()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} criterion {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.passed);
    }
    println!(
        "{}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
