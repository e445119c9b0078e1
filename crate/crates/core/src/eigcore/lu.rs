use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, Magnitude};
use crate::{Error, Result};

/// LU factorization with partial pivoting of a complex square matrix.
///
/// Independent of the eigensolver, so it doubles as the direct-solve
/// route when resolvents are cross-checked.
#[derive(Clone, Debug)]
pub struct ComplexLu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl ComplexLu {
    pub fn factor(mut a: ComplexMatrix) -> Result<Self> {
        let n = a.order();
        let scale = a.max_abs();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|i| (i, a[(i, k)].magnitude()))
                .fold((k, -1.0), |best, x| if x.1 > best.1 { x } else { best });
            if pmag <= f64::EPSILON * f64::EPSILON * scale || pmag == 0.0 {
                return Err(Error::Singular(k));
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = t;
                }
            }
            let pivot = a[(k, k)];
            for i in (k + 1)..n {
                let m = a[(i, k)] / pivot;
                a[(i, k)] = m;
                if m == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in (k + 1)..n {
                    let t = a[(k, j)];
                    a[(i, j)] -= m * t;
                }
            }
        }
        Ok(Self { lu: a, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.order();
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let t = self.lu[(i, k)] * x[k];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let t = self.lu[(i, k)] * x[k];
                x[i] -= t;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.lu.order();
        let mut out = ComplexMatrix::zeros(n);
        let mut e = alloc::vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
            e[j] = Complex64::new(1.0, 0.0);
            for (i, x) in self.solve(&e).into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn inverts_complex_matrix() {
        let c = |re, im| Complex64::new(re, im);
        let a = ComplexMatrix::from_row_major(
            2,
            vec![c(0.0, 1.0), c(2.0, 0.0), c(1.0, 0.0), c(1.0, -1.0)],
        )
        .unwrap();
        let inv = ComplexLu::factor(a.clone()).unwrap().inverse();
        let id = a.matmul(&inv).sub(&ComplexMatrix::identity(2));
        assert!(id.max_abs() < 1e-15);
    }

    #[test]
    fn singular_is_reported() {
        let a = ComplexMatrix::zeros(2);
        assert_eq!(ComplexLu::factor(a).unwrap_err(), Error::Singular(0));
    }
}
