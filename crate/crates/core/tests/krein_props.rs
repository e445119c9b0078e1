mod common;

use common::*;
use krein_core::eigcore::{symmetric_eig, ComplexLu, ComplexMatrix, RealMatrix, SymmetricMatrix};
use krein_core::krein::{
    build_secular, classify_case, laurent_at, projection_limit, verify_against_oracle, CaseTag,
    KreinProblem, RankOneUpdate, Tolerances, DEFAULT_EPSILONS,
};
use krein_core::Complex64;
use proptest::prelude::*;

/// A rotated spectrum with gaps ≥ 0.1, a chosen level `λ0`, and raw
/// coefficients for `f` in the eigenbasis.
#[derive(Clone, Debug)]
struct Instance {
    spectrum: Vec<f64>,
    q: RealMatrix,
    coeffs: Vec<f64>,
    level: usize,
    c: f64,
}

impl Instance {
    fn a(&self) -> SymmetricMatrix {
        with_spectrum(&self.q, &self.spectrum)
    }

    fn lambda0(&self) -> f64 {
        self.spectrum[self.level]
    }

    fn f_from(&self, coeffs: &[f64]) -> Vec<f64> {
        self.q.matvec(coeffs)
    }

    /// `f` with its component in the `λ0` eigenspace removed.
    fn f_orthogonal(&self) -> Vec<f64> {
        let l0 = self.lambda0();
        let c: Vec<f64> = self
            .spectrum
            .iter()
            .zip(&self.coeffs)
            .map(|(&mu, &b)| if mu == l0 { 0.0 } else { b })
            .collect();
        self.f_from(&c)
    }

    /// `(f|Rf)` for [`Self::f_orthogonal`], from the diagonal form.
    fn f_r_f(&self) -> f64 {
        let l0 = self.lambda0();
        self.spectrum
            .iter()
            .zip(&self.coeffs)
            .filter(|(&mu, _)| mu != l0)
            .map(|(&mu, &b)| b * b / (l0 - mu))
            .sum()
    }
}

fn instance(max_n: usize) -> impl Strategy<Value = Instance> {
    gapped_spectrum(max_n / 3, 0.1).prop_flat_map(|spectrum| {
        let n = spectrum.len();
        (
            Just(spectrum),
            prop::collection::vec(-1.0..1.0f64, n * n),
            prop::collection::vec(prop_oneof![-1.0..-0.2f64, 0.2..1.0f64], n),
            0..n,
            prop_oneof![-2.0..-0.1f64, 0.1..2.0f64],
        )
            .prop_map(move |(spectrum, qraw, coeffs, level, c)| Instance {
                q: orthogonal_from(n, &qraw),
                spectrum,
                coeffs,
                level,
                c,
            })
    })
}

fn check_constructed(
    a: &SymmetricMatrix,
    u: &RankOneUpdate,
    lambda0: f64,
    want: CaseTag,
) -> Result<(), TestCaseError> {
    let tol = Tolerances::default();
    let r = classify_case(a, u, lambda0, tol).unwrap();
    prop_assert_eq!(r.case, want);
    let ld = laurent_at(a, lambda0, symmetric_eig(a).unwrap().default_cluster_tol()).unwrap();
    let delta = r.predicted_projector.trace() - ld.projector.trace();
    prop_assert!((delta - want.rank_change() as f64).abs() < 1e-9);
    let report =
        verify_against_oracle(a, u, symmetric_eig(a).unwrap().default_cluster_tol()).unwrap();
    for c in report.failures() {
        prop_assert!(false, "oracle disagreement: {:?}", c);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn case_a_constructed(inst in instance(12)) {
        let a = inst.a();
        let u = RankOneUpdate::new(inst.f_from(&inst.coeffs), inst.c).unwrap();
        check_constructed(&a, &u, inst.lambda0(), CaseTag::A)?;
    }

    #[test]
    fn case_b_constructed(inst in instance(12)) {
        let a = inst.a();
        let d = 1.0 - inst.c * inst.f_r_f();
        prop_assume!(d.abs() > 0.1);
        let u = RankOneUpdate::new(inst.f_orthogonal(), inst.c).unwrap();
        check_constructed(&a, &u, inst.lambda0(), CaseTag::B)?;
    }

    #[test]
    fn case_c_constructed(inst in instance(12)) {
        let frf = inst.f_r_f();
        prop_assume!(frf.abs() >= 0.1);
        let a = inst.a();
        let c = 1.0 / frf;
        let u = RankOneUpdate::new(inst.f_orthogonal(), c).unwrap();
        check_constructed(&a, &u, inst.lambda0(), CaseTag::C)?;

        // the case-C denominator is bounded below by Cauchy–Schwarz
        let tol = Tolerances::default();
        let r = classify_case(&a, &u, inst.lambda0(), tol).unwrap();
        let ld = laurent_at(&a, inst.lambda0(), 1e-9).unwrap();
        let rf = ld.reduced.matvec(u.f());
        let den: f64 = rf.iter().map(|x| x * x).sum();
        let bound = (1.0 - 10.0 * tol.d_tol) / (c * c * u.norm_sq());
        prop_assert!(r.regular_value.unwrap().abs() <= tol.d_tol);
        prop_assert!(den >= bound * (1.0 - 1e-12));
    }

    #[test]
    fn laurent_truncation_is_second_order(inst in instance(10)) {
        let a = inst.a();
        let n = a.order();
        let ld = laurent_at(&a, inst.lambda0(), 1e-9).unwrap();
        let k: Vec<f64> = [1e-2, 1e-3]
            .iter()
            .map(|&h| {
                let shifted = ComplexMatrix::identity(n)
                    .scale(Complex64::new(inst.lambda0() + h, 0.0))
                    .sub(&a.matrix().to_complex());
                let exact = ComplexLu::factor(shifted).unwrap().inverse().map(|z| z.re);
                exact.sub(&ld.truncated_resolvent(h)).max_abs() / (h * h)
            })
            .collect();
        prop_assume!(n > ld.multiplicity);
        prop_assert!(k[1] <= 10.0 * k[0] && k[0] <= 10.0 * k[1], "K estimates {:?}", k);
    }

    #[test]
    fn projection_limit_converges(inst in instance(10)) {
        let a = inst.a();
        let pl = projection_limit(&a, inst.lambda0(), &DEFAULT_EPSILONS).unwrap();
        prop_assert!(*pl.distances.last().unwrap() <= 1e-4);
        prop_assert!(pl.tail_monotone);
    }

    #[test]
    fn krein_correction_matches_direct_inverse(
        a in random_symmetric(8),
        fraw in prop::collection::vec(-1.0..1.0f64, 8),
        c in -2.0..2.0f64,
        re in -3.0..3.0f64,
        im in -1.0..1.0f64,
    ) {
        let n = a.order();
        let u = RankOneUpdate::new(fraw[..n].to_vec(), c).unwrap();
        let b = u.apply(&a).unwrap();
        let lambda = Complex64::new(re, im);
        let p = KreinProblem::new(a.clone(), u, Tolerances::default()).unwrap();
        prop_assume!(p.decomposition().nearest(lambda).1 >= 0.1);
        prop_assume!(symmetric_eig(&b).unwrap().nearest(lambda).1 >= 0.1);
        let inv = |m: &SymmetricMatrix| {
            let shifted = ComplexMatrix::identity(n).scale(lambda).sub(&m.matrix().to_complex());
            ComplexLu::factor(shifted).unwrap().inverse()
        };
        let direct = inv(&b).sub(&inv(&a));
        let got = p.resolvent_correction(lambda).unwrap();
        prop_assert!(got.sub(&direct).max_abs() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eigenvalues_interlace(
        a in random_symmetric(12),
        fraw in prop::collection::vec(-1.0..1.0f64, 12),
        c in prop_oneof![-2.0..-1e-3f64, 1e-3..2.0f64],
    ) {
        let n = a.order();
        let f = fraw[..n].to_vec();
        let la = symmetric_eig(&a).unwrap();
        let lb = symmetric_eig(&a.plus_rank_one(c, &f).unwrap()).unwrap();
        let (la, lb) = (la.eigenvalues(), lb.eigenvalues());
        let tol = 1e-12 * (1.0 + la.iter().chain(lb).fold(0.0f64, |m, x| m.max(x.abs())));
        for i in 0..n {
            if c > 0.0 {
                prop_assert!(la[i] <= lb[i] + tol);
                if i + 1 < n { prop_assert!(lb[i] <= la[i + 1] + tol); }
            } else {
                prop_assert!(lb[i] <= la[i] + tol);
                if i > 0 { prop_assert!(la[i - 1] <= lb[i] + tol); }
            }
        }
    }
}

proptest! {
    #[test]
    fn secular_increases_between_poles(
        a in random_symmetric(10),
        fraw in prop::collection::vec(-1.0..1.0f64, 10),
        c in 0.05..3.0f64,
    ) {
        let n = a.order();
        let u = RankOneUpdate::new(fraw[..n].to_vec(), c).unwrap();
        let d = symmetric_eig(&a).unwrap();
        let s = build_secular(&d, &u, d.default_cluster_tol(), Tolerances::default().overlap_tol_for(&u)).unwrap();
        for gap in s.poles().windows(2) {
            let grid: Vec<f64> = (1..=100).map(|j| gap[0] + (gap[1] - gap[0]) * j as f64 / 101.0).collect();
            let vals: Vec<f64> = grid.iter().map(|&x| s.eval(x).unwrap()).collect();
            prop_assert!(vals.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
