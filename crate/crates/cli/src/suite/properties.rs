//! Deterministic versions of the invariant checks, sized for the
//! acceptance run.

use krein_core::eigcore::{symmetric_eig, ComplexLu, ComplexMatrix, RealMatrix, SymmetricMatrix};
use krein_core::krein::{
    build_secular, laurent_at, projection_limit, CaseTag, KreinProblem, RankOneUpdate, Tolerances,
    DEFAULT_EPSILONS,
};
use krein_core::{Complex64, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::instances::{construct, instance_seed, rng_for};

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    /// The worst value of the quantity being bounded.
    pub worst: f64,
    pub bound: f64,
}

impl PropertyOutcome {
    fn new(name: &'static str, bound: f64) -> Self {
        Self {
            name,
            instances: 0,
            failures: 0,
            worst: 0.0,
            bound,
        }
    }

    fn record(&mut self, ok: bool, value: f64) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
        }
        if value.is_finite() {
            self.worst = self.worst.max(value);
        } else {
            self.worst = f64::INFINITY;
        }
    }

    pub fn passed(&self) -> bool {
        self.instances > 0 && self.failures == 0
    }
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> SymmetricMatrix {
    let raw = RealMatrix::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
    SymmetricMatrix::try_from_matrix(RealMatrix::from_fn(n, |i, j| {
        0.5 * (raw[(i, j)] + raw[(j, i)])
    }))
    .unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn dense_resolvent(a: &SymmetricMatrix, lambda: Complex64) -> Result<ComplexMatrix> {
    let n = a.order();
    let shifted = ComplexMatrix::identity(n)
        .scale(lambda)
        .sub(&a.matrix().to_complex());
    Ok(ComplexLu::factor(shifted)?.inverse())
}

/// `max |C − [(λ − B)⁻¹ − (λ − A)⁻¹]|` over random `n × n` instances with
/// `λ` at distance `≥ 0.1` from both spectra.
pub fn krein_formula_check(count: usize, n: usize, seed: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("krein_formula", 1e-10);
    let mut index = 0;
    while out.instances < count {
        let mut rng = rng_for(seed ^ (index as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
        index += 1;
        let a = random_symmetric(&mut rng, n);
        let u =
            RankOneUpdate::new(random_vector(&mut rng, n), rng.random_range(-2.0..2.0)).unwrap();
        let lambda = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-1.0..1.0));
        let b = u.apply(&a).unwrap();
        let problem = KreinProblem::new(a.clone(), u, Tolerances::default()).unwrap();
        let far_b = symmetric_eig(&b)
            .map(|d| d.nearest(lambda).1 >= 0.1)
            .unwrap_or(false);
        if problem.decomposition().nearest(lambda).1 < 0.1 || !far_b {
            continue;
        }
        let err = (|| -> Result<f64> {
            let direct = dense_resolvent(&b, lambda)?.sub(&dense_resolvent(&a, lambda)?);
            Ok(problem.resolvent_correction(lambda)?.sub(&direct).max_abs())
        })()
        .unwrap_or(f64::INFINITY);
        out.record(err <= out.bound, err);
    }
    out
}

/// Weyl interlacing of `σ(A)` and `σ(A + c f fᵀ)`; `worst` is the largest
/// violation.
pub fn interlacing_check(count: usize, seed: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("interlacing", 0.0);
    for index in 0..count {
        let mut rng = rng_for(seed ^ (index as u64).wrapping_mul(0xA24B_AED4_963E_E407));
        let n = rng.random_range(1..=12);
        let a = random_symmetric(&mut rng, n);
        let f = random_vector(&mut rng, n);
        let c = rng.random_range(1e-3..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let la = symmetric_eig(&a).unwrap();
        let lb = symmetric_eig(&a.plus_rank_one(c, &f).unwrap()).unwrap();
        let (la, lb) = (la.eigenvalues(), lb.eigenvalues());
        let slack = 1e-12 * (1.0 + la.iter().chain(lb).fold(0.0f64, |m, x| m.max(x.abs())));
        let mut violation: f64 = 0.0;
        for i in 0..n {
            let (lo, hi) = if c > 0.0 {
                (la[i], la.get(i + 1).copied().unwrap_or(f64::INFINITY))
            } else {
                (if i > 0 { la[i - 1] } else { f64::NEG_INFINITY }, la[i])
            };
            violation = violation.max(lo - lb[i]).max(lb[i] - hi);
        }
        out.record(violation <= slack, violation.max(0.0));
    }
    out
}

/// `‖(λ0 + h − A)⁻¹ − [P/h + R − hR²]‖ ≤ K h²` at `h = 1e-2, 1e-3`, with the
/// two estimates of `K` within a factor 10. `worst` is the largest ratio.
pub fn laurent_order_check(count: usize, seed: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("laurent_order", 10.0);
    for index in 0..count {
        let inst = construct(CaseTag::A, instance_seed(seed, CaseTag::A, index));
        if inst.a.order() > 10 || inst.spectrum.iter().all(|&x| x == inst.lambda0) {
            continue;
        }
        let ratio = (|| -> Result<f64> {
            let ld = laurent_at(&inst.a, inst.lambda0, 1e-9)?;
            let mut k = [0.0; 2];
            for (slot, h) in k.iter_mut().zip([1e-2, 1e-3]) {
                let exact =
                    dense_resolvent(&inst.a, Complex64::new(inst.lambda0 + h, 0.0))?.map(|z| z.re);
                *slot = exact.sub(&ld.truncated_resolvent(h)).max_abs() / (h * h);
            }
            Ok((k[0] / k[1]).max(k[1] / k[0]))
        })()
        .unwrap_or(f64::INFINITY);
        out.record(ratio <= out.bound, ratio);
    }
    out
}

/// `w` strictly increasing on a 100-point grid inside every gap between
/// consecutive poles, for `c > 0`.
pub fn secular_monotonicity_check(count: usize, seed: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("secular_monotonicity", 0.0);
    for index in 0..count {
        let mut rng = rng_for(seed ^ (index as u64).wrapping_mul(0x94D0_49BB_1331_11EB));
        let n = rng.random_range(2..=12);
        let a = random_symmetric(&mut rng, n);
        let u =
            RankOneUpdate::new(random_vector(&mut rng, n), rng.random_range(0.05..3.0)).unwrap();
        let ok = (|| -> Result<usize> {
            let d = symmetric_eig(&a)?;
            let s = build_secular(
                &d,
                &u,
                d.default_cluster_tol(),
                Tolerances::default().overlap_tol_for(&u),
            )?;
            let mut bad = 0;
            for gap in s.poles().windows(2) {
                let mut prev = f64::NEG_INFINITY;
                for j in 1..=100 {
                    let x = gap[0] + (gap[1] - gap[0]) * j as f64 / 101.0;
                    let w = s.eval(x)?;
                    if !(w > prev) {
                        bad += 1;
                    }
                    prev = w;
                }
            }
            Ok(bad)
        })()
        .unwrap_or(usize::MAX);
        out.record(ok == 0, ok as f64);
    }
    out
}

/// On constructed case-C instances: `(f|R²f) ≥ (1 − 10·D_tol)/(c²‖f‖²)`.
/// `worst` is the largest `bound / (f|R²f)`, which must stay `≤ 1`.
pub fn cauchy_schwarz_check(count: usize, seed: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("cauchy_schwarz", 1.0);
    let tol = Tolerances::default();
    for index in 0..count {
        let inst = construct(CaseTag::C, instance_seed(seed, CaseTag::C, index));
        let ratio = (|| -> Result<f64> {
            let problem = KreinProblem::new(inst.a.clone(), inst.update.clone(), tol)?;
            let report = problem.classify(inst.lambda0)?;
            let c = inst.update.c();
            let small = report.overlap <= tol.overlap_tol_for(&inst.update)
                && report.regular_value.is_some_and(|d| d.abs() <= tol.d_tol);
            if report.case != CaseTag::C || !small {
                return Ok(f64::INFINITY);
            }
            let ld = problem.laurent_at(inst.lambda0)?;
            let rf = ld.reduced.matvec(inst.update.f());
            let den: f64 = rf.iter().map(|x| x * x).sum();
            let bound = (1.0 - 10.0 * tol.d_tol) / (c * c * inst.update.norm_sq());
            Ok(bound / den)
        })()
        .unwrap_or(f64::INFINITY);
        out.record(ratio <= out.bound, ratio);
    }
    out
}

/// `iε(λ0 + iε − A)⁻¹ → P`: distance at `ε = 1e-6` at most `1e-4`, tail of
/// the default sequence non-increasing. Spectral gaps are `≥ 0.1`.
pub fn projection_limit_check(count: usize, seed: u64) -> PropertyOutcome {
    let mut out = PropertyOutcome::new("projection_limit", 1e-4);
    for index in 0..count {
        let inst = construct(CaseTag::B, instance_seed(seed, CaseTag::B, index));
        let (dist, monotone) = projection_limit(&inst.a, inst.lambda0, &DEFAULT_EPSILONS)
            .map(|p| (*p.distances.last().unwrap(), p.tail_monotone))
            .unwrap_or((f64::INFINITY, false));
        out.record(dist <= out.bound && monotone, dist);
    }
    out
}
