use alloc::vec::Vec;
use core::ops::Range;

use super::eig::SpectralDecomposition;
use crate::{Error, Result};

/// A group of numerically coincident eigenvalues: the finite-dimensional
/// stand-in for an isolated eigenvalue of multiplicity `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenCluster {
    /// Mean of the member eigenvalues.
    pub lambda0: f64,
    /// Indices into the ascending eigenvalue list.
    pub members: Range<usize>,
}

impl EigenCluster {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// Groups ascending `values` into clusters whose neighbours are at most
/// `tol` apart. Gaps between clusters are strictly larger than `tol`.
pub fn cluster_values(values: &[f64], tol: f64) -> Result<Vec<EigenCluster>> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(
            "cluster tolerance must be positive and finite",
        ));
    }
    if values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("values must be sorted ascending"));
    }
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            if i > start {
                let mean = values[start..i].iter().sum::<f64>() / (i - start) as f64;
                out.push(EigenCluster {
                    lambda0: mean,
                    members: start..i,
                });
            }
            start = i;
        }
    }
    Ok(out)
}

pub fn cluster_spectrum(d: &SpectralDecomposition, tol: f64) -> Result<Vec<EigenCluster>> {
    cluster_values(d.eigenvalues(), tol)
}

/// Index of the cluster whose members come within `tol` of `lambda0`.
/// `Ok(None)` when `lambda0` is in the resolvent set at this resolution.
pub fn locate_cluster(
    clusters: &[EigenCluster],
    values: &[f64],
    lambda0: f64,
    tol: f64,
) -> Result<Option<usize>> {
    let mut hit = None;
    for (ci, c) in clusters.iter().enumerate() {
        let near = values[c.members.clone()]
            .iter()
            .any(|&mu| libm::fabs(mu - lambda0) <= tol);
        if near {
            if hit.is_some() {
                return Err(Error::AmbiguousCluster { lambda0 });
            }
            hit = Some(ci);
        }
    }
    Ok(hit)
}
