//! Exhaustive optimum for tiny instances of k-means with outliers.
//!
//! Enumerates every size-z outlier subset and every partition of the
//! remaining points into at most k nonempty groups (restricted-growth
//! strings); centers are group means. Guarded to n <= 12, k <= 3, z <= 2
//! so the worst case stays well under 10^7 configurations.

use std::collections::BTreeSet;

use crate::cost::sqdist;
use crate::error::{Error, Result};
use crate::points::PointSet;

pub const ORACLE_MAX_N: usize = 12;
pub const ORACLE_MAX_K: usize = 3;
pub const ORACLE_MAX_Z: usize = 2;

/// The exact optimum: cost, discarded points, inlier partition and the
/// corresponding group means.
#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub opt_cost: f64,
    pub opt_outliers: BTreeSet<usize>,
    /// Nonempty inlier groups, each a list of point indices.
    pub opt_partition: Vec<Vec<usize>>,
    /// Mean of each group, aligned with `opt_partition`.
    pub centers: Vec<Vec<f64>>,
}

pub fn brute_force_oracle(x: &PointSet, k: usize, z: usize) -> Result<OracleSolution> {
    if x.n() > ORACLE_MAX_N || k > ORACLE_MAX_K || z > ORACLE_MAX_Z {
        return Err(Error::OracleTooLarge {
            max_n: ORACLE_MAX_N,
            max_k: ORACLE_MAX_K,
            max_z: ORACLE_MAX_Z,
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if z >= x.n() {
        return Err(Error::TooManyOutliers { z, n: x.n() });
    }

    let indices: Vec<usize> = (0..x.n()).collect();
    let mut best: Option<OracleSolution> = None;
    for outliers in combinations(&indices, z) {
        let inliers: Vec<usize> = indices
            .iter()
            .copied()
            .filter(|i| !outliers.contains(i))
            .collect();
        let mut labels = vec![0usize; inliers.len()];
        search_partitions(x, &inliers, &mut labels, 1, 1, k, &outliers, &mut best);
    }
    Ok(best.expect("at least one configuration exists"))
}

/// Recursively assigns restricted-growth labels: item i may take any label
/// up to the number of blocks used so far, capped at k.
#[allow(clippy::too_many_arguments)]
fn search_partitions(
    x: &PointSet,
    inliers: &[usize],
    labels: &mut Vec<usize>,
    next_item: usize,
    blocks_used: usize,
    k: usize,
    outliers: &[usize],
    best: &mut Option<OracleSolution>,
) {
    if next_item == inliers.len() {
        evaluate(x, inliers, labels, blocks_used, outliers, best);
        return;
    }
    let max_label = blocks_used.min(k - 1);
    for label in 0..=max_label {
        labels[next_item] = label;
        let used = blocks_used.max(label + 1);
        search_partitions(x, inliers, labels, next_item + 1, used, k, outliers, best);
    }
}

fn evaluate(
    x: &PointSet,
    inliers: &[usize],
    labels: &[usize],
    blocks: usize,
    outliers: &[usize],
    best: &mut Option<OracleSolution>,
) {
    let d = x.d();
    let mut sums = vec![vec![0.0; d]; blocks];
    let mut counts = vec![0usize; blocks];
    for (&idx, &label) in inliers.iter().zip(labels) {
        counts[label] += 1;
        for (s, v) in sums[label].iter_mut().zip(x.point(idx)) {
            *s += v;
        }
    }
    let mut centers = Vec::with_capacity(blocks);
    for (sum, &count) in sums.iter().zip(&counts) {
        centers.push(sum.iter().map(|s| s / count as f64).collect::<Vec<f64>>());
    }
    let mut cost = 0.0;
    for (&idx, &label) in inliers.iter().zip(labels) {
        cost += sqdist(x.point(idx), &centers[label]);
    }
    if best.as_ref().map_or(true, |b| cost < b.opt_cost) {
        let mut partition = vec![Vec::new(); blocks];
        for (&idx, &label) in inliers.iter().zip(labels) {
            partition[label].push(idx);
        }
        *best = Some(OracleSolution {
            opt_cost: cost,
            opt_outliers: outliers.iter().copied().collect(),
            opt_partition: partition,
            centers,
        });
    }
}

/// All size-z subsets of `items`, in lexicographic order.
fn combinations(items: &[usize], z: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(z);
    fn recurse(items: &[usize], z: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == z {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            recurse(items, z, i + 1, current, out);
            current.pop();
        }
    }
    recurse(items, z, 0, &mut current, &mut out);
    out
}
