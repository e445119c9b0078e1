use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Gauss–Legendre rule mapped to `(0, 1)`: ascending nodes, weights summing
/// to one, `x_j + x_{N−1−j} = 1`.
pub fn gauss_legendre_unit(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("quadrature needs at least one node"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi's initial guess for the i-th largest root of P_n.
        let mut t = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, d) = legendre(n, t);
            let dt = p / d;
            t -= dt;
            if libm::fabs(dt) <= 1e-16 {
                break;
            }
        }
        let dp = legendre(n, t).1;
        let w = 1.0 / ((1.0 - t * t) * dp * dp);
        // t is the root of P_n nearest +1 for i = 0; map it next to x = 0 and mirror.
        let lo = 0.5 * (1.0 - t);
        nodes[i] = lo;
        nodes[n - 1 - i] = 1.0 - lo;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.5;
    }
    Ok((nodes, weights))
}

/// `P_n(t)` and `P_n'(t)` by the three-term recurrence.
fn legendre(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}
