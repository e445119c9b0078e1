use alloc::vec::Vec;

use crate::eigcore::{cluster_spectrum, SpectralDecomposition};
use crate::krein::RankOneUpdate;
use crate::{Complex64, Error, Result};

/// Pole/weight form of the Krein denominator
///
/// `w(λ) = 1 − c·(f|(λ − A)⁻¹f) = 1 − c·Σ wᵢ/(λ − λᵢ)`
///
/// with `λᵢ` the eigenvalue clusters of `A` and `wᵢ = (f|Pᵢ f)`. Zeros of
/// `w` off `σ(A)` are exactly the eigenvalues of `B = A + c·f fᵀ` that `A`
/// does not have.
#[derive(Clone, Debug, PartialEq)]
pub struct SecularFunction {
    poles: Vec<f64>,
    weights: Vec<f64>,
    c: f64,
    w_floor: f64,
}

/// Relative distance to a pole below which evaluation is refused.
const POLE_REL_TOL: f64 = 1e-14;

pub fn build_secular(
    d: &SpectralDecomposition,
    u: &RankOneUpdate,
    cluster_tol: f64,
    w_floor: f64,
) -> Result<SecularFunction> {
    if u.f().len() != d.order() {
        return Err(Error::DimensionMismatch {
            expected: d.order(),
            found: u.f().len(),
        });
    }
    if !(w_floor >= 0.0) {
        return Err(Error::InvalidArgument("weight floor must be non-negative"));
    }
    let coeffs = d.coefficients(u.f());
    let mut poles = Vec::new();
    let mut weights = Vec::new();
    for cluster in cluster_spectrum(d, cluster_tol)? {
        let w: f64 = coeffs[cluster.members.clone()].iter().map(|x| x * x).sum();
        if w > w_floor {
            poles.push(cluster.lambda0);
            weights.push(w);
        }
    }
    Ok(SecularFunction {
        poles,
        weights,
        c: u.c(),
        w_floor,
    })
}

impl SecularFunction {
    pub fn from_parts(poles: Vec<f64>, weights: Vec<f64>, c: f64) -> Result<Self> {
        if poles.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: poles.len(),
                found: weights.len(),
            });
        }
        if poles.windows(2).any(|w| !(w[1] > w[0])) || poles.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument(
                "poles must be finite and strictly increasing",
            ));
        }
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument(
                "weights must be positive and finite",
            ));
        }
        if !c.is_finite() {
            return Err(Error::InvalidArgument("coupling must be finite"));
        }
        Ok(Self {
            poles,
            weights,
            c,
            w_floor: 0.0,
        })
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn coupling(&self) -> f64 {
        self.c
    }

    pub fn w_floor(&self) -> f64 {
        self.w_floor
    }

    fn check_pole(&self, lambda: f64) -> Result<()> {
        for &p in &self.poles {
            if libm::fabs(lambda - p) <= POLE_REL_TOL * f64::max(libm::fabs(p), libm::fabs(lambda))
                || lambda == p
            {
                return Err(Error::PoleEvaluation { lambda, pole: p });
            }
        }
        Ok(())
    }

    fn value_unchecked(&self, lambda: f64) -> f64 {
        let s: f64 = self
            .poles
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w / (lambda - p))
            .sum();
        1.0 - self.c * s
    }

    fn derivative_unchecked(&self, lambda: f64) -> f64 {
        let s: f64 = self
            .poles
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| {
                let t = lambda - p;
                w / (t * t)
            })
            .sum();
        self.c * s
    }

    pub fn eval(&self, lambda: f64) -> Result<f64> {
        self.check_pole(lambda)?;
        Ok(self.value_unchecked(lambda))
    }

    /// `w'(λ) = c·Σ wᵢ/(λ − λᵢ)²`.
    pub fn derivative(&self, lambda: f64) -> Result<f64> {
        self.check_pole(lambda)?;
        Ok(self.derivative_unchecked(lambda))
    }

    pub fn eval_complex(&self, lambda: Complex64) -> Complex64 {
        let s = self
            .poles
            .iter()
            .zip(&self.weights)
            .fold(Complex64::new(0.0, 0.0), |acc, (&p, &w)| {
                acc + w / (lambda - p)
            });
        Complex64::new(1.0, 0.0) - s * self.c
    }

    /// Every zero of `w`, ascending.
    ///
    /// `sign(c)·w` increases strictly between poles and runs from −∞ to +∞
    /// there, so each gap holds exactly one zero. One more zero sits beyond
    /// the top pole for `c > 0` (below the bottom pole for `c < 0`), inside
    /// `|c|·Σwᵢ` of it.
    pub fn roots(&self, root_tol: f64) -> Vec<f64> {
        if self.c == 0.0 || self.poles.is_empty() {
            return Vec::new();
        }
        let total: f64 = self.weights.iter().sum();
        let reach = libm::fabs(self.c) * total;
        let mut out = Vec::with_capacity(self.poles.len());
        if self.c < 0.0 {
            let p0 = self.poles[0];
            out.push(self.refine(Bracket::closed_lo(p0 - reach, p0), root_tol));
        }
        for w in self.poles.windows(2) {
            out.push(self.refine(Bracket::open(w[0], w[1]), root_tol));
        }
        if self.c > 0.0 {
            let top = self.poles[self.poles.len() - 1];
            out.push(self.refine(Bracket::closed_hi(top, top + reach), root_tol));
        }
        out
    }

    /// Bisection down to a thousandth of the bracket, then safeguarded
    /// Newton on `g = sign(c)·w`, which is increasing.
    fn refine(&self, bracket: Bracket, root_tol: f64) -> f64 {
        let sgn = libm::copysign(1.0, self.c);
        let g = |x: f64| sgn * self.value_unchecked(x);
        let Bracket {
            mut lo,
            mut hi,
            lo_closed,
            hi_closed,
        } = bracket;

        // Closed ends are evaluable and may already be the root.
        if hi_closed && g(hi) == 0.0 {
            return hi;
        }
        if lo_closed && g(lo) == 0.0 {
            return lo;
        }

        let width0 = hi - lo;
        while hi - lo > 1e-3 * width0 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let gm = g(mid);
            if gm < 0.0 {
                lo = mid;
            } else if gm > 0.0 {
                hi = mid;
            } else {
                return mid;
            }
        }

        let mut x = 0.5 * (lo + hi);
        for _ in 0..500 {
            let gx = g(x);
            if gx == 0.0 {
                return x;
            }
            if gx < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let target = root_tol * (1.0 + libm::fabs(x));
            if libm::fabs(gx) <= root_tol {
                let delta = 0.5 * target;
                if x - delta > lo && g(x - delta) <= 0.0 {
                    lo = x - delta;
                }
                if x + delta < hi && g(x + delta) >= 0.0 {
                    hi = x + delta;
                }
                if hi - lo <= target {
                    return x;
                }
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return x;
            }
            let step = gx / (sgn * self.derivative_unchecked(x));
            let newton = x - step;
            x = if newton > lo && newton < hi && newton.is_finite() {
                newton
            } else {
                mid
            };
        }
        x
    }
}

struct Bracket {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

impl Bracket {
    fn open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }
    fn closed_lo(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: true,
            hi_closed: false,
        }
    }
    fn closed_hi(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: false,
            hi_closed: true,
        }
    }
}

/// Zeros of `w` that are new eigenvalues of `B`: roots within
/// `exclusion_tol` of any point of `exclusion` (normally `σ(A)`) are dropped,
/// since a zero sitting on an old eigenvalue raises its multiplicity instead.
pub fn find_new_eigenvalues(
    s: &SecularFunction,
    exclusion: &[f64],
    exclusion_tol: f64,
    root_tol: f64,
) -> Vec<f64> {
    s.roots(root_tol)
        .into_iter()
        .filter(|r| exclusion.iter().all(|e| libm::fabs(r - e) > exclusion_tol))
        .collect()
}
