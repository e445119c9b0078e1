//! Constructed instances for each case of the classification.
//!
//! Case C has measure zero among random draws, so instances are built: a
//! spectrum with gaps of at least [`MIN_GAP`], a random rotation, an update
//! vector with prescribed eigenbasis coefficients, and (for case C) the
//! coupling that makes `D` vanish.

use krein_core::eigcore::{RealMatrix, SymmetricMatrix};
use krein_core::krein::{CaseTag, RankOneUpdate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_ORDER: usize = 12;
pub const MIN_GAP: f64 = 0.1;

/// Reject `|(f|Rf)|` or `|D|` below this and redraw.
pub const RESAMPLE_FLOOR: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct Instance {
    pub case: CaseTag,
    pub seed: u64,
    pub spectrum: Vec<f64>,
    pub lambda0: f64,
    pub a: SymmetricMatrix,
    pub update: RankOneUpdate,
}

/// Per-instance seed so any single instance can be regenerated alone.
pub fn instance_seed(master: u64, case: CaseTag, index: usize) -> u64 {
    let tag = match case {
        CaseTag::A => 1,
        CaseTag::B => 2,
        CaseTag::C => 3,
    };
    master
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(tag << 32)
        .wrapping_add(index as u64)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let x = rng.random_range(lo..hi);
    if rng.random_bool(0.5) {
        x
    } else {
        -x
    }
}

/// Product of `n` random Householder reflections.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let mut q = RealMatrix::identity(n);
    for _ in 0..n {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv < 1e-3 {
            continue;
        }
        // q ← q (I − 2 v vᵀ / vᵀv)
        let qv = q.matvec(&v);
        q = RealMatrix::from_fn(n, |i, j| q[(i, j)] - 2.0 * qv[i] * v[j] / vv);
    }
    q
}

/// `Q diag(d) Qᵀ`, symmetrized.
pub fn rotated(q: &RealMatrix, d: &[f64]) -> SymmetricMatrix {
    let n = d.len();
    let m = RealMatrix::from_fn(n, |i, j| (0..n).map(|k| q[(i, k)] * d[k] * q[(j, k)]).sum());
    let m = RealMatrix::from_fn(n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    SymmetricMatrix::try_from_matrix(m).expect("rotated spectrum is symmetric and finite")
}

/// Sorted spectrum of order `2..=MAX_ORDER` with distinct levels at least
/// `MIN_GAP` apart, the chosen level repeated `m` times.
fn spectrum(rng: &mut ChaCha8Rng, m: usize) -> (Vec<f64>, f64) {
    let n = rng.random_range(m + 1..=MAX_ORDER);
    let others = n - m;
    let mut levels = Vec::with_capacity(others + 1);
    let mut x = rng.random_range(-2.0..0.0);
    for _ in 0..=others {
        levels.push(x);
        x += MIN_GAP + rng.random_range(0.0..0.8);
    }
    let chosen = levels[rng.random_range(0..levels.len())];
    let mut d: Vec<f64> = levels.iter().copied().filter(|&l| l != chosen).collect();
    d.extend(std::iter::repeat_n(chosen, m));
    d.sort_by(f64::total_cmp);
    (d, chosen)
}

/// `(f|Rf)` from eigenbasis coefficients, `R` the reduced resolvent at `λ0`.
fn reduced_pairing(d: &[f64], beta: &[f64], lambda0: f64) -> f64 {
    d.iter()
        .zip(beta)
        .filter(|(&mu, _)| mu != lambda0)
        .map(|(&mu, &b)| b * b / (lambda0 - mu))
        .sum()
}

pub fn construct(case: CaseTag, seed: u64) -> Instance {
    let mut rng = rng_for(seed);
    loop {
        let m = match case {
            CaseTag::A => rng.random_range(1..=3),
            _ => rng.random_range(1..=2),
        };
        let (d, lambda0) = spectrum(&mut rng, m);
        let n = d.len();
        let mut beta: Vec<f64> = (0..n).map(|_| signed(&mut rng, 0.2, 1.0)).collect();
        if case != CaseTag::A {
            for (b, &mu) in beta.iter_mut().zip(&d) {
                if mu == lambda0 {
                    *b = 0.0;
                }
            }
        }
        let frf = reduced_pairing(&d, &beta, lambda0);
        let c = match case {
            CaseTag::A => signed(&mut rng, 0.1, 2.0),
            CaseTag::B => {
                let c = signed(&mut rng, 0.1, 2.0);
                if (1.0 - c * frf).abs() <= RESAMPLE_FLOOR {
                    continue;
                }
                c
            }
            CaseTag::C => {
                if frf.abs() < RESAMPLE_FLOOR {
                    continue;
                }
                1.0 / frf
            }
        };
        let q = random_orthogonal(&mut rng, n);
        let a = rotated(&q, &d);
        let f = q.matvec(&beta);
        return Instance {
            case,
            seed,
            spectrum: d,
            lambda0,
            a,
            update: RankOneUpdate::new(f, c).expect("finite draw"),
        };
    }
}
