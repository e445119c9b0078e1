use alloc::vec::Vec;

use crate::eigcore::{check_finite, dot, SymmetricMatrix};
use crate::Result;

/// The perturbation `B = A + c·f fᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOneUpdate {
    f: Vec<f64>,
    c: f64,
}

impl RankOneUpdate {
    pub fn new(f: Vec<f64>, c: f64) -> Result<Self> {
        check_finite(&f)?;
        if !c.is_finite() {
            return Err(crate::Error::InvalidArgument("coupling must be finite"));
        }
        Ok(Self { f, c })
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `(f|f)`.
    pub fn norm_sq(&self) -> f64 {
        dot(&self.f, &self.f)
    }

    /// `B = A` exactly.
    pub fn is_trivial(&self) -> bool {
        self.c == 0.0 || self.f.iter().all(|&x| x == 0.0)
    }

    pub fn apply(&self, a: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        a.plus_rank_one(self.c, &self.f)
    }
}
