mod common;

use common::*;
use krein_core::eigcore::{cluster_values, resolvent_apply, symmetric_eig, ComplexMatrix};
use krein_core::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reconstruction_and_orthonormality(a in random_symmetric(12)) {
        let d = symmetric_eig(&a).unwrap();
        let scale = 1.0 + a.matrix().max_abs();
        prop_assert!(d.reconstruct().sub(a.matrix()).max_abs() <= 1e-9 * scale);
        let q = d.vectors();
        let qtq = q.transpose().matmul(q);
        prop_assert!(qtq.sub(&krein_core::eigcore::RealMatrix::identity(a.order())).max_abs() <= 1e-12);
        prop_assert!(d.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn agrees_with_jacobi(a in random_symmetric(12)) {
        let d = symmetric_eig(&a).unwrap();
        prop_assert!(max_abs_diff(d.eigenvalues(), &jacobi_eigenvalues(&a)) <= 1e-11);
    }

    #[test]
    fn deterministic(a in random_symmetric(10)) {
        let x = symmetric_eig(&a).unwrap();
        let y = symmetric_eig(&a).unwrap();
        prop_assert_eq!(x.eigenvalues(), y.eigenvalues());
        prop_assert_eq!(x.vectors(), y.vectors());
    }

    #[test]
    fn resolvent_residual(
        a in random_symmetric(12),
        re in -3.0..3.0f64,
        im in -1.0..1.0f64,
        vraw in prop::collection::vec(-2.0..2.0f64, 12),
    ) {
        let lambda = Complex64::new(re, im);
        let d = symmetric_eig(&a).unwrap();
        prop_assume!(d.nearest(lambda).1 >= 0.1);
        let n = a.order();
        let v = &vraw[..n];
        let x = resolvent_apply(&a, lambda, v).unwrap();
        let shifted = ComplexMatrix::identity(n).scale(lambda).sub(&a.matrix().to_complex());
        let r = shifted.matvec(&x);
        let vnorm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        let res = r.iter().zip(v).map(|(ri, vi)| (ri - vi).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(res <= 1e-10 * (1.0 + vnorm));
    }

    #[test]
    fn reclustering_is_idempotent(
        raw in prop::collection::vec(-1.0..1.0f64, 1..40),
        tol in 1e-3..0.2f64,
    ) {
        let mut values = raw;
        values.sort_by(f64::total_cmp);
        let first = cluster_values(&values, tol).unwrap();
        let reps: Vec<f64> = first.iter().map(|c| c.lambda0).collect();
        let second = cluster_values(&reps, tol).unwrap();
        prop_assert_eq!(second.len(), first.len());
        prop_assert!(second.iter().all(|c| c.multiplicity() == 1));
    }
}
