//! Dense symmetric eigendecomposition.
//!
//! Householder reduction to tridiagonal form followed by the implicit QL
//! iteration with Wilkinson-type shifts (the classic `tred2`/`tql2` pair).
//! Both stages are deterministic: no randomized starts and a fixed sweep
//! order, and eigenvector signs are canonicalized afterwards.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::{dot, RealMatrix, SymmetricMatrix};
use crate::{Error, Result};

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    values: Vec<f64>,
    vectors: RealMatrix,
}

pub fn symmetric_eig(a: &SymmetricMatrix) -> Result<SpectralDecomposition> {
    let n = a.order();
    let mut v = a.matrix().clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e);
    ql_implicit(&mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let mut vectors = RealMatrix::from_fn(n, |i, j| v[(i, order[j])]);

    // Largest component of every eigenvector is made positive; the first
    // index wins ties.
    for j in 0..n {
        let mut pivot = 0;
        let mut best = -1.0;
        for i in 0..n {
            let m = libm::fabs(vectors[(i, j)]);
            if m > best {
                best = m;
                pivot = i;
            }
        }
        if vectors[(pivot, j)] < 0.0 {
            for i in 0..n {
                vectors[(i, j)] = -vectors[(i, j)];
            }
        }
    }
    Ok(SpectralDecomposition { values, vectors })
}

fn tridiagonalize(v: &mut RealMatrix, d: &mut [f64], e: &mut [f64]) {
    let n = v.order();
    for j in 0..n {
        d[j] = v[(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += libm::fabs(d[k]);
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
                v[(j, i)] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = libm::sqrt(h);
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[(j, i)] = f;
                g = e[j] + v[(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[(k, j)] * d[k];
                    e[k] += v[(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n.saturating_sub(1) {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    v[(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = 0.0;
    }
    v[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

fn ql_implicit(v: &mut RealMatrix, d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = v.order();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let max_iter = 30 * n.max(1);
    for l in 0..n {
        tst1 = tst1.max(libm::fabs(d[l]) + libm::fabs(e[l]));
        let mut m = l;
        while m < n - 1 && libm::fabs(e[m]) > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    return Err(Error::NoConvergence);
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if libm::fabs(e[l]) <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

impl SpectralDecomposition {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvectors as columns.
    pub fn vectors(&self) -> &RealMatrix {
        &self.vectors
    }

    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        self.vectors.column(j)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values
            .iter()
            .fold(0.0, |m, &x| f64::max(m, libm::fabs(x)))
    }

    /// `1e-9·(1 + ρ(A))`.
    pub fn default_cluster_tol(&self) -> f64 {
        1e-9 * (1.0 + self.spectral_radius())
    }

    /// Coordinates `Qᵀv` of `v` in the eigenbasis.
    pub fn coefficients(&self, v: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(v.len(), n);
        let mut out = vec![0.0; n];
        for (i, &vi) in v.iter().enumerate() {
            for (o, &q) in out.iter_mut().zip(self.vectors.row(i)) {
                *o += q * vi;
            }
        }
        out
    }

    /// `Q·diag(g)·Qᵀ` for per-eigenpair weights `g`.
    pub fn spectral_sum(&self, g: &[f64]) -> RealMatrix {
        let n = self.order();
        assert_eq!(g.len(), n);
        let scaled: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                self.vectors
                    .row(i)
                    .iter()
                    .zip(g)
                    .map(|(q, w)| q * w)
                    .collect()
            })
            .collect();
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = dot(&scaled[i], self.vectors.row(j));
                out[(i, j)] = x;
                out[(j, i)] = x;
            }
        }
        out
    }

    /// Orthogonal projector onto the span of the listed eigenvectors.
    pub fn projector(&self, members: impl IntoIterator<Item = usize>) -> RealMatrix {
        let n = self.order();
        let mut out = RealMatrix::zeros(n);
        for j in members {
            for r in 0..n {
                let qr = self.vectors[(r, j)];
                if qr == 0.0 {
                    continue;
                }
                for s in 0..n {
                    out[(r, s)] += qr * self.vectors[(s, j)];
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> RealMatrix {
        self.spectral_sum(&self.values)
    }

    /// Nearest eigenvalue to a complex point, with its index and distance.
    pub fn nearest(&self, lambda: Complex64) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (i, &mu) in self.values.iter().enumerate() {
            let dist = libm::hypot(lambda.re - mu, lambda.im);
            if dist < best.1 {
                best = (i, dist);
            }
        }
        best
    }

    /// Solves `(λI − A)u = v` through the eigenbasis. Fails when `λ` is
    /// within `tol` of an eigenvalue.
    pub fn resolvent_apply(
        &self,
        lambda: Complex64,
        v: &[f64],
        tol: f64,
    ) -> Result<Vec<Complex64>> {
        let n = self.order();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let (idx, distance) = self.nearest(lambda);
        if distance <= tol {
            return Err(Error::ResolventAtSpectrum {
                re: lambda.re,
                im: lambda.im,
                eigenvalue: self.values[idx],
                distance,
            });
        }
        let coeffs: Vec<Complex64> = self
            .coefficients(v)
            .into_iter()
            .zip(&self.values)
            .map(|(x, &mu)| Complex64::new(x, 0.0) / (lambda - mu))
            .collect();
        Ok((0..n)
            .map(|i| {
                self.vectors
                    .row(i)
                    .iter()
                    .zip(&coeffs)
                    .fold(Complex64::new(0.0, 0.0), |acc, (&q, &x)| acc + x * q)
            })
            .collect())
    }
}
