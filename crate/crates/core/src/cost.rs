//! Plain and robust clustering costs, and the thresholded potential.
//!
//! The robust cost drops the z largest per-point squared distances before
//! summing (top-z exclusion). Selection is done with expected-linear-time
//! `select_nth_unstable_by`, never a full sort.

use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::state::SeedingState;

/// Outlier count and threshold parameter for the robust objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    /// Number of points discarded as outliers.
    pub z: usize,
    /// Threshold parameter; the clip value is `eta * rho / z`.
    pub eta: f64,
}

/// Squared Euclidean distance between two equal-dimension points.
pub fn squared_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(sqdist(a, b))
}

/// Unchecked squared distance; callers validate dimensions once up front.
#[inline]
pub(crate) fn sqdist(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (u, v) in a.iter().zip(b) {
        let diff = u - v;
        acc += diff * diff;
    }
    acc
}

/// Squared distance from `x` to its nearest center.
#[inline]
pub(crate) fn nearest_sqdist(x: &[f64], centers: &[Vec<f64>]) -> f64 {
    let mut best = f64::INFINITY;
    for c in centers {
        let d = sqdist(x, c);
        if d < best {
            best = d;
        }
    }
    best
}

/// Per-point squared distance to the nearest center, for every point.
pub fn nearest_sq_dists(x: &PointSet, centers: &[Vec<f64>]) -> Result<Vec<f64>> {
    if centers.is_empty() {
        return Err(Error::EmptyCenters);
    }
    for c in centers {
        if c.len() != x.d() {
            return Err(Error::DimensionMismatch {
                left: x.d(),
                right: c.len(),
            });
        }
    }
    Ok(x.rows().map(|row| nearest_sqdist(row, centers)).collect())
}

/// Materializes center coordinates from dataset indices.
pub fn centers_from_indices(x: &PointSet, indices: &[usize]) -> Result<Vec<Vec<f64>>> {
    indices
        .iter()
        .map(|&i| {
            if i >= x.n() {
                Err(Error::IndexOutOfBounds { index: i, n: x.n() })
            } else {
                Ok(x.point(i).to_vec())
            }
        })
        .collect()
}

/// Plain k-means cost: sum over all points of the squared distance to the
/// nearest center.
pub fn kmeans_cost(x: &PointSet, centers: &[Vec<f64>]) -> Result<f64> {
    Ok(nearest_sq_dists(x, centers)?.iter().sum())
}

/// Robust cost: k-means cost after discarding the z largest per-point
/// squared distances.
pub fn robust_cost(x: &PointSet, centers: &[Vec<f64>], z: usize) -> Result<f64> {
    let dists = nearest_sq_dists(x, centers)?;
    robust_cost_of_dists(&dists, z)
}

/// Top-z exclusion over a precomputed distance vector, O(n) expected.
pub fn robust_cost_of_dists(dists: &[f64], z: usize) -> Result<f64> {
    let n = dists.len();
    if z >= n {
        return Err(Error::TooManyOutliers { z, n });
    }
    if z == 0 {
        return Ok(dists.iter().sum());
    }
    let keep = n - z;
    let mut buf = dists.to_vec();
    // after this, buf[..keep] holds the keep smallest values
    buf.select_nth_unstable_by(keep, f64::total_cmp);
    Ok(buf[..keep].iter().sum())
}

/// Thresholded potential: sum over all points of
/// `min(d2_cache[x], eta * rho / z)`.
pub fn thresholded_potential(state: &SeedingState, params: &CostParams) -> Result<f64> {
    let threshold = clip_threshold(state, params)?;
    Ok(state
        .d2_cache()
        .iter()
        .map(|&d| d.min(threshold))
        .sum())
}

/// The witness set of points below the clip threshold, plus the count of
/// excluded points.
pub fn lemma1_witness(
    state: &SeedingState,
    params: &CostParams,
) -> Result<(Vec<usize>, usize)> {
    let threshold = clip_threshold(state, params)?;
    let witness: Vec<usize> = state
        .d2_cache()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d <= threshold)
        .map(|(i, _)| i)
        .collect();
    let excluded = state.d2_cache().len() - witness.len();
    Ok((witness, excluded))
}

fn clip_threshold(state: &SeedingState, params: &CostParams) -> Result<f64> {
    if params.z == 0 {
        return Err(Error::ZeroOutlierThreshold);
    }
    if state.iteration() == 0 {
        return Err(Error::EmptyCenters);
    }
    let rho = robust_cost_of_dists(state.d2_cache(), params.z)?;
    Ok(params.eta * rho / params.z as f64)
}
