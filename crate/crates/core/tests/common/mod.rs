#![allow(dead_code, clippy::needless_range_loop)]

use krein_core::eigcore::{RealMatrix, SymmetricMatrix};
use proptest::prelude::*;

pub fn symmetric_from(n: usize, raw: &[f64]) -> SymmetricMatrix {
    let m = RealMatrix::from_fn(n, |i, j| 0.5 * (raw[i * n + j] + raw[j * n + i]));
    SymmetricMatrix::try_from_matrix(m).unwrap()
}

pub fn random_symmetric(max_n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-1.0..1.0f64, n * n).prop_map(move |raw| symmetric_from(n, &raw))
    })
}

/// Orthonormal columns by modified Gram–Schmidt; falls back to the identity
/// column when a draw is degenerate.
pub fn orthogonal_from(n: usize, raw: &[f64]) -> RealMatrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<f64> = (0..n).map(|i| raw[i * n + j]).collect();
        for _ in 0..2 {
            for c in &cols {
                let p: f64 = c.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= p * y);
            }
        }
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm < 1e-6 {
            v = (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect();
            for c in &cols {
                let p: f64 = c.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= p * y);
            }
            let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= nrm);
        } else {
            v.iter_mut().for_each(|x| *x /= nrm);
        }
        cols.push(v);
    }
    RealMatrix::from_fn(n, |i, j| cols[j][i])
}

/// `Q diag(d) Qᵀ`.
pub fn with_spectrum(q: &RealMatrix, d: &[f64]) -> SymmetricMatrix {
    let n = d.len();
    let m = RealMatrix::from_fn(n, |i, j| (0..n).map(|k| q[(i, k)] * d[k] * q[(j, k)]).sum());
    let m = RealMatrix::from_fn(n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    SymmetricMatrix::try_from_matrix(m).unwrap()
}

/// Spectra whose distinct values are at least `gap` apart, with repeats.
pub fn gapped_spectrum(max_n: usize, gap: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0.0..1.0f64, 1usize..=3), 1..=max_n).prop_map(move |levels| {
        let mut out = Vec::new();
        let mut x = -1.0;
        for (step, mult) in levels {
            x += gap + step;
            for _ in 0..mult {
                out.push(x);
            }
        }
        out
    })
}

/// Cyclic Jacobi eigenvalues, ascending. Independent of the library solver.
pub fn jacobi_eigenvalues(a: &SymmetricMatrix) -> Vec<f64> {
    let n = a.order();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q] == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (m[k][p], m[k][q]);
                    m[k][p] = c * akp - s * akq;
                    m[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * apk - s * aqk;
                    m[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    d.sort_by(f64::total_cmp);
    d
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
