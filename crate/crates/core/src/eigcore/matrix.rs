use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Absolute value for the scalar types stored in [`Square`].
pub trait Magnitude: Copy {
    fn magnitude(self) -> f64;
}

impl Magnitude for f64 {
    fn magnitude(self) -> f64 {
        libm::fabs(self)
    }
}

impl Magnitude for Complex64 {
    fn magnitude(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Square<T> {
    n: usize,
    data: Vec<T>,
}

pub type RealMatrix = Square<f64>;
pub type ComplexMatrix = Square<Complex64>;

impl<T: Copy + Zero> Square<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn map<U: Copy + Zero>(&self, f: impl Fn(T) -> U) -> Square<U> {
        Square {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl<T> Square<T>
where
    T: Copy
        + Zero
        + One
        + core::ops::Add<Output = T>
        + core::ops::Sub<Output = T>
        + core::ops::Mul<Output = T>,
{
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matmul order mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.n, v.len(), "matvec length mismatch");
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &x)| acc + a * x)
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self[(i, i)])
    }

    /// `u vᵀ` (no conjugation).
    pub fn outer(u: &[T], v: &[T]) -> Self {
        assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |i, j| u[i] * v[j])
    }
}

impl<T: Magnitude> Square<T> {
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .fold(0.0, |m, &x| f64::max(m, x.magnitude()))
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(
            self.data
                .iter()
                .map(|&x| x.magnitude() * x.magnitude())
                .sum(),
        )
    }
}

impl RealMatrix {
    pub fn to_complex(&self) -> ComplexMatrix {
        self.map(|x| Complex64::new(x, 0.0))
    }
}

impl<T> Index<(usize, usize)> for Square<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Square<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// A validated real symmetric matrix: the operator `A` (or `B`).
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix(RealMatrix);

impl SymmetricMatrix {
    /// Relative asymmetry accepted by [`SymmetricMatrix::new`].
    pub const SYMMETRY_TOL: f64 = 1e-12;

    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        Self::try_from_matrix(RealMatrix::from_row_major(n, entries)?)
    }

    pub fn try_from_matrix(m: RealMatrix) -> Result<Self> {
        let n = m.order();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for i in 0..n {
            for j in 0..n {
                if !m[(i, j)].is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        let tol = Self::SYMMETRY_TOL * (1.0 + m.max_abs());
        for i in 0..n {
            for j in (i + 1)..n {
                let diff = libm::fabs(m[(i, j)] - m[(j, i)]);
                if diff > tol {
                    return Err(Error::Asymmetric {
                        row: i,
                        col: j,
                        diff,
                    });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_diagonal(d: &[f64]) -> Result<Self> {
        Self::try_from_matrix(RealMatrix::from_fn(d.len(), |i, j| {
            if i == j {
                d[i]
            } else {
                0.0
            }
        }))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::try_from_matrix(RealMatrix::identity(n))
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RealMatrix {
        self.0
    }

    pub fn entries(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        self.0.matvec(v)
    }

    /// `self + c·f fᵀ`, symmetric by construction.
    pub fn plus_rank_one(&self, c: f64, f: &[f64]) -> Result<Self> {
        let n = self.order();
        if f.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.len(),
            });
        }
        let mut m = self.0.clone();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += c * f[i] * f[j];
            }
        }
        Self::try_from_matrix(m)
    }
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub(crate) fn check_finite(v: &[f64]) -> Result<()> {
    match v.iter().position(|x| !x.is_finite()) {
        Some(index) => Err(Error::NonFiniteComponent { index }),
        None => Ok(()),
    }
}
