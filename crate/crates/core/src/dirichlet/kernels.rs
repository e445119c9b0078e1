//! Closed forms for `T = −d²/dx²` on `[0, 1]` with `u(0) = u(1) = 0`,
//! its inverse `A = T⁻¹` and the perturbation `f(x) = x − 1/2`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// `|sin|` below which a kernel evaluation counts as a pole.
pub const POLE_TOL: f64 = 1e-8;

/// A point of the spectral plane in both parametrizations: `z = k²` for `T`
/// and `λ = 1/z` for `A = T⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WavenumberPoint {
    pub k: f64,
    pub z: f64,
    pub lambda: f64,
}

impl WavenumberPoint {
    pub fn from_k(k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidArgument(
                "wavenumber must be positive and finite",
            ));
        }
        let z = k * k;
        Ok(Self {
            k,
            z,
            lambda: 1.0 / z,
        })
    }

    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(
                "spectral parameter of A must be positive and finite",
            ));
        }
        Ok(Self {
            k: 1.0 / libm::sqrt(lambda),
            z: 1.0 / lambda,
            lambda,
        })
    }
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            value: x,
            lo: 0.0,
            hi: 1.0,
        })
    }
}

fn checked_sin(angle: f64) -> Result<f64> {
    let sine = libm::sin(angle);
    if libm::fabs(sine) <= POLE_TOL {
        return Err(Error::KernelPole { angle, sine });
    }
    Ok(sine)
}

/// Kernel of `T⁻¹`: `G(x, ξ) = x(1 − ξ)` for `x ≤ ξ`, `(1 − x)ξ` otherwise.
pub fn green_kernel(x: f64, xi: f64) -> Result<f64> {
    check_unit(x)?;
    check_unit(xi)?;
    Ok(green_unchecked(x, xi))
}

pub(crate) fn green_unchecked(x: f64, xi: f64) -> f64 {
    if x <= xi {
        -x * (xi - 1.0)
    } else {
        -(x - 1.0) * xi
    }
}

/// Kernel of `(z − T)⁻¹`, `z = k²`:
/// `−sin(kx) sin(k(1 − ξ)) / (k sin k)` for `x ≤ ξ`, mirrored otherwise.
pub fn resolvent_kernel(x: f64, xi: f64, p: WavenumberPoint) -> Result<f64> {
    check_unit(x)?;
    check_unit(xi)?;
    let k = p.k;
    let s = checked_sin(k)?;
    let (lo, hi) = if x <= xi { (x, xi) } else { (xi, x) };
    Ok(-libm::sin(k * lo) * libm::sin(k * (1.0 - hi)) / (k * s))
}

/// `f_z = z(z − T)⁻¹f` for `f(x) = x − 1/2`:
/// `(x − 1/2) − sin(k(x − 1/2)) / (2 sin(k/2))`.
pub fn f_z_profile(x: f64, p: WavenumberPoint) -> Result<f64> {
    check_unit(x)?;
    let s = checked_sin(0.5 * p.k)?;
    Ok((x - 0.5) - 0.5 * libm::sin(p.k * (x - 0.5)) / s)
}

/// Krein denominator of the continuum problem:
/// `1 + α((k/2)·cot(k/2) − 1)`.
pub fn analytic_secular(p: WavenumberPoint, alpha: f64) -> Result<f64> {
    let half = 0.5 * p.k;
    let s = checked_sin(half)?;
    Ok(1.0 + alpha * (half * libm::cos(half) / s - 1.0))
}

/// `(f|P f)` at `λ0 = 1/k0²`, `k0 = nπ`: `2·((1 + cos k0)/(2k0))²`, that is
/// `2/k0²` for even `n` and `0` for odd `n`.
pub fn overlap_analytic(k0: f64) -> Result<f64> {
    let n = libm::round(k0 / PI);
    if !(n >= 1.0) || libm::fabs(k0 / PI - n) > 1e-9 {
        return Err(Error::NotDirichletWavenumber { k0 });
    }
    // Parity is decided on the integer so odd modes give an exact zero.
    let cos_k0 = if (n as u64).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let k0 = n * PI;
    let t = (1.0 + cos_k0) / (2.0 * k0);
    Ok(2.0 * t * t)
}

/// Eigenfunction of `B` at a zero `k` of the secular function:
/// `−sin(k(x − 1/2)) / (2 sin(k/2))`.
pub fn eigenfunction_b(k: f64, x: f64) -> Result<f64> {
    let s = checked_sin(0.5 * k)?;
    Ok(-0.5 * libm::sin(k * (x - 0.5)) / s)
}

/// `(λ − T⁻¹)⁻¹v = (1/λ)(v − (1/λ)(1/λ − T)⁻¹v)`.
///
/// `t_resolvent_v` is `(1/λ − T)⁻¹v`, computed however the caller likes.
pub fn inverse_spectral_map(lambda: f64, v: &[f64], t_resolvent_v: &[f64]) -> Result<Vec<f64>> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidArgument(
            "spectral parameter must be non-zero and finite",
        ));
    }
    if v.len() != t_resolvent_v.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            found: t_resolvent_v.len(),
        });
    }
    let inv = 1.0 / lambda;
    Ok(v.iter()
        .zip(t_resolvent_v)
        .map(|(vi, ri)| inv * (vi - inv * ri))
        .collect())
}

/// Scalar form of [`inverse_spectral_map`] for `T = (t)`.
pub fn inverse_spectral_map_scalar(t: f64, lambda: f64) -> Result<f64> {
    if lambda == 0.0 {
        return Err(Error::InvalidArgument(
            "spectral parameter must be non-zero",
        ));
    }
    let z = 1.0 / lambda;
    if z == t {
        return Err(Error::ResolventAtSpectrum {
            re: z,
            im: 0.0,
            eigenvalue: t,
            distance: 0.0,
        });
    }
    Ok(inverse_spectral_map(lambda, &[1.0], &[1.0 / (z - t)])?[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize) -> impl Iterator<Item = f64> + Clone {
        (0..m).map(move |i| i as f64 / (m - 1) as f64)
    }

    #[test]
    fn green_kernel_values() {
        for xi in grid(11) {
            assert_eq!(green_kernel(0.0, xi).unwrap(), 0.0);
            assert_eq!(green_kernel(1.0, xi).unwrap(), 0.0);
        }
        assert_eq!(green_kernel(0.5, 0.5).unwrap(), 0.25);
        for x in grid(20) {
            for xi in grid(20) {
                assert_eq!(green_kernel(x, xi).unwrap(), green_kernel(xi, x).unwrap());
            }
        }
        assert!(matches!(
            green_kernel(1.5, 0.0),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(green_kernel(0.2, -0.1).is_err());
    }

    #[test]
    fn resolvent_kernel_limits() {
        // z → 0: (z − T)⁻¹ → −T⁻¹.
        let p = WavenumberPoint::from_k(1e-3).unwrap();
        assert!((resolvent_kernel(0.3, 0.7, p).unwrap() + 0.09).abs() < 1e-6);
        assert!((green_kernel(0.3, 0.7).unwrap() - 0.09).abs() < 1e-15);
        let mut worst: f64 = 0.0;
        for x in grid(20) {
            for xi in grid(20) {
                worst = worst.max(
                    (resolvent_kernel(x, xi, p).unwrap() + green_kernel(x, xi).unwrap()).abs(),
                );
            }
        }
        assert!(worst <= 1e-5, "{worst}");

        let p = WavenumberPoint::from_k(1.3).unwrap();
        for xi in grid(7) {
            assert_eq!(resolvent_kernel(0.0, xi, p).unwrap(), 0.0);
            assert!(resolvent_kernel(1.0, xi, p).unwrap().abs() < 1e-16);
        }
        for x in grid(20) {
            for xi in grid(20) {
                assert_eq!(
                    resolvent_kernel(x, xi, p).unwrap(),
                    resolvent_kernel(xi, x, p).unwrap()
                );
            }
        }
        assert!(matches!(
            resolvent_kernel(0.2, 0.4, WavenumberPoint::from_k(PI).unwrap()),
            Err(Error::KernelPole { .. })
        ));
    }

    #[test]
    fn f_z_boundary_and_centre() {
        let p = WavenumberPoint::from_k(1.3).unwrap();
        assert!(f_z_profile(0.0, p).unwrap().abs() < 1e-16);
        assert!(f_z_profile(1.0, p).unwrap().abs() < 1e-16);
        assert_eq!(f_z_profile(0.5, p).unwrap(), 0.0);
        let direct = 0.25 - 0.5 * (0.325f64).sin() / (0.65f64).sin();
        assert_eq!(f_z_profile(0.75, p).unwrap(), direct);
        assert!(f_z_profile(0.3, WavenumberPoint::from_k(2.0 * PI).unwrap()).is_err());
    }

    #[test]
    fn f_z_solves_boundary_value_problem() {
        // z f + f'' = z (x − 1/2), central differences with step 1e-3
        let p = WavenumberPoint::from_k(2.7).unwrap();
        let h = 1e-3;
        let mut x = h;
        while x < 1.0 - h {
            let f0 = f_z_profile(x, p).unwrap();
            let fpp = (f_z_profile(x + h, p).unwrap() - 2.0 * f0 + f_z_profile(x - h, p).unwrap())
                / (h * h);
            assert!((p.z * f0 + fpp - p.z * (x - 0.5)).abs() <= 1e-4, "x = {x}");
            x += 0.01;
        }
    }

    #[test]
    fn analytic_secular_values() {
        for k in [0.3, 1.3, 5.1] {
            let p = WavenumberPoint::from_k(k).unwrap();
            assert_eq!(analytic_secular(p, 0.0).unwrap(), 1.0);
        }
        let p = WavenumberPoint::from_k(PI).unwrap();
        assert!(analytic_secular(p, 1.0).unwrap().abs() < 1e-15);
        let p = WavenumberPoint::from_k(1e-4).unwrap();
        assert!((analytic_secular(p, 1.0).unwrap() - 1.0).abs() < 1e-8);
        assert!(analytic_secular(WavenumberPoint::from_k(2.0 * PI).unwrap(), 1.0).is_err());
    }

    #[test]
    fn analytic_overlaps() {
        let two_pi = 2.0 * PI;
        assert!((overlap_analytic(two_pi).unwrap() - 2.0 / (two_pi * two_pi)).abs() < 1e-16);
        assert!((overlap_analytic(two_pi).unwrap() - 0.0506606).abs() < 1e-7);
        assert_eq!(overlap_analytic(PI).unwrap(), 0.0);
        assert_eq!(overlap_analytic(3.0 * PI).unwrap(), 0.0);
        assert!(overlap_analytic(1.0).is_err());
        assert!(overlap_analytic(0.0).is_err());
    }

    #[test]
    fn eigenfunction_shape() {
        let k = 4.0;
        assert_eq!(eigenfunction_b(k, 0.5).unwrap(), 0.0);
        assert!((eigenfunction_b(k, 0.0).unwrap() - 0.5).abs() < 1e-15);
        for x in grid(21) {
            assert!(
                (eigenfunction_b(k, x).unwrap() + eigenfunction_b(k, 1.0 - x).unwrap()).abs()
                    < 1e-14
            );
        }
        assert!(eigenfunction_b(2.0 * PI, 0.1).is_err());
    }

    #[test]
    fn scalar_inverse_map() {
        assert!((inverse_spectral_map_scalar(2.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((inverse_spectral_map_scalar(2.0, -1.0).unwrap() + 2.0 / 3.0).abs() < 1e-15);
        assert!(inverse_spectral_map_scalar(2.0, 0.0).is_err());
        assert!(inverse_spectral_map_scalar(2.0, 0.5).is_err());
    }
}
