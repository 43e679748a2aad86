//! Outlier marking, precision/recall, cost statistics, and the geometric
//! check behind the approximate-uniformity lemma.

use std::collections::BTreeSet;

use crate::cost::{centers_from_indices, nearest_sqdist, sqdist};
use crate::error::{Error, Result};
use crate::points::PointSet;

/// Centers, the predicted outlier set, inlier assignments, and the cost
/// over inliers.
#[derive(Debug, Clone)]
pub struct ClusteringResult {
    pub center_indices: Vec<usize>,
    pub predicted_outliers: BTreeSet<usize>,
    /// Nearest-center position (index into `center_indices`) per point;
    /// `None` for predicted outliers.
    pub assignments: Vec<Option<usize>>,
    pub inlier_cost: f64,
}

/// Marks the z points farthest from their nearest center as outliers.
///
/// Ties at the cutoff are broken deterministically: among equal distances
/// the higher point index is marked outlier, so the lower index stays an
/// inlier.
pub fn mark_outliers(x: &PointSet, center_indices: &[usize], z: usize) -> Result<ClusteringResult> {
    if z >= x.n() {
        return Err(Error::TooManyOutliers { z, n: x.n() });
    }
    let centers = centers_from_indices(x, center_indices)?;
    if centers.is_empty() {
        return Err(Error::EmptyCenters);
    }

    let mut d2 = Vec::with_capacity(x.n());
    let mut nearest = Vec::with_capacity(x.n());
    for row in x.rows() {
        let mut best = f64::INFINITY;
        let mut best_c = 0;
        for (ci, c) in centers.iter().enumerate() {
            let d = sqdist(row, c);
            if d < best {
                best = d;
                best_c = ci;
            }
        }
        d2.push(best);
        nearest.push(best_c);
    }

    let mut order: Vec<usize> = (0..x.n()).collect();
    order.sort_unstable_by(|&a, &b| d2[b].total_cmp(&d2[a]).then(b.cmp(&a)));
    let predicted_outliers: BTreeSet<usize> = order[..z].iter().copied().collect();

    let mut inlier_cost = 0.0;
    let mut assignments = vec![None; x.n()];
    for i in 0..x.n() {
        if !predicted_outliers.contains(&i) {
            inlier_cost += d2[i];
            assignments[i] = Some(nearest[i]);
        }
    }
    Ok(ClusteringResult {
        center_indices: center_indices.to_vec(),
        predicted_outliers,
        assignments,
        inlier_cost,
    })
}

/// Precision and recall of a predicted outlier set against the ground
/// truth. Each is `None` when its denominator set is empty, never a
/// silent zero.
pub fn precision_recall(
    true_outliers: &BTreeSet<usize>,
    predicted_outliers: &BTreeSet<usize>,
) -> (Option<f64>, Option<f64>) {
    let overlap = true_outliers.intersection(predicted_outliers).count() as f64;
    let precision = if predicted_outliers.is_empty() {
        None
    } else {
        Some(overlap / predicted_outliers.len() as f64)
    };
    let recall = if true_outliers.is_empty() {
        None
    } else {
        Some(overlap / true_outliers.len() as f64)
    };
    (precision, recall)
}

/// One repetition's measurements, as consumed by [`summarize`].
#[derive(Debug, Clone, Copy)]
pub struct RunRecord {
    pub cost: f64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub seconds: f64,
}

/// Aggregate statistics over repetitions, in the shape of the benchmark
/// tables: min/avg/median cost, max/avg/median precision and recall, and
/// mean seeding time.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub runs: usize,
    pub cost_min: f64,
    pub cost_avg: f64,
    pub cost_median: f64,
    pub precision_max: Option<f64>,
    pub precision_avg: Option<f64>,
    pub precision_median: Option<f64>,
    pub recall_max: Option<f64>,
    pub recall_avg: Option<f64>,
    pub recall_median: Option<f64>,
    pub time_avg_s: f64,
}

pub fn summarize(runs: &[RunRecord]) -> Result<MetricsReport> {
    if runs.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot summarize an empty run list".into(),
        ));
    }
    let costs: Vec<f64> = runs.iter().map(|r| r.cost).collect();
    let precisions: Vec<f64> = runs.iter().filter_map(|r| r.precision).collect();
    let recalls: Vec<f64> = runs.iter().filter_map(|r| r.recall).collect();
    let (p_max, p_avg, p_med) = max_avg_median(&precisions);
    let (r_max, r_avg, r_med) = max_avg_median(&recalls);
    Ok(MetricsReport {
        runs: runs.len(),
        cost_min: costs.iter().copied().fold(f64::INFINITY, f64::min),
        cost_avg: costs.iter().sum::<f64>() / costs.len() as f64,
        cost_median: median(&costs),
        precision_max: p_max,
        precision_avg: p_avg,
        precision_median: p_med,
        recall_max: r_max,
        recall_avg: r_avg,
        recall_median: r_med,
        time_avg_s: runs.iter().map(|r| r.seconds).sum::<f64>() / runs.len() as f64,
    })
}

fn max_avg_median(values: &[f64]) -> (Option<f64>, Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None, None);
    }
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let avg = values.iter().sum::<f64>() / values.len() as f64;
    (Some(max), Some(avg), Some(median(values)))
}

/// Median; for an even count, the mean of the two middle values.
pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// Outcome of evaluating the approximate-uniformity lemma on one (A, S)
/// pair: when the hypothesis `phi_A(S) >= 64 phi_A({mu})` holds, both
/// `phi_mu(S) >= (31/|A|) phi_A({mu})` and `|B| >= (25/31)|A|` must hold,
/// where B collects the points of A whose distance to S is within
/// [phi_mu(S)/3, 7 phi_mu(S)/3].
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma2Report {
    pub a_size: usize,
    pub phi_a_mu: f64,
    pub phi_a_s: f64,
    pub phi_mu_s: f64,
    pub b_size: usize,
    pub hypothesis_holds: bool,
    pub mean_distance_bound_holds: Option<bool>,
    pub b_size_bound_holds: Option<bool>,
}

impl Lemma2Report {
    /// True when the hypothesis is met and either conclusion fails.
    pub fn is_counterexample(&self) -> bool {
        self.hypothesis_holds
            && (self.mean_distance_bound_holds == Some(false)
                || self.b_size_bound_holds == Some(false))
    }
}

pub fn lemma2_check(a: &PointSet, s_centers: &[Vec<f64>]) -> Result<Lemma2Report> {
    if s_centers.is_empty() {
        return Err(Error::EmptyCenters);
    }
    let d = a.d();
    for c in s_centers {
        if c.len() != d {
            return Err(Error::DimensionMismatch {
                left: d,
                right: c.len(),
            });
        }
    }
    let mut mu = vec![0.0; d];
    for row in a.rows() {
        for (m, v) in mu.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in mu.iter_mut() {
        *m /= a.n() as f64;
    }
    let phi_a_mu: f64 = a.rows().map(|row| sqdist(row, &mu)).sum();
    let phi_a_s: f64 = a.rows().map(|row| nearest_sqdist(row, s_centers)).sum();
    let phi_mu_s = nearest_sqdist(&mu, s_centers);

    let hypothesis_holds = phi_a_s >= 64.0 * phi_a_mu;
    let (mean_bound, b_bound, b_size) = if hypothesis_holds {
        let mean_bound = phi_mu_s >= (31.0 / a.n() as f64) * phi_a_mu;
        let lo = phi_mu_s / 3.0;
        let hi = 7.0 * phi_mu_s / 3.0;
        let b_size = a
            .rows()
            .filter(|row| {
                let d = nearest_sqdist(row, s_centers);
                lo <= d && d <= hi
            })
            .count();
        // 31|B| >= 25|A|, compared in integers
        let b_bound = 31 * b_size >= 25 * a.n();
        (Some(mean_bound), Some(b_bound), b_size)
    } else {
        (None, None, 0)
    };
    Ok(Lemma2Report {
        a_size: a.n(),
        phi_a_mu,
        phi_a_s,
        phi_mu_s,
        b_size,
        hypothesis_holds,
        mean_distance_bound_holds: mean_bound,
        b_size_bound_holds: b_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line(points: &[f64]) -> PointSet {
        PointSet::new(points.to_vec(), 1).unwrap()
    }

    #[test]
    fn mark_outliers_examples() {
        let x = line(&[0.0, 1.0, 100.0]);
        let r = mark_outliers(&x, &[0], 0).unwrap();
        assert!(r.predicted_outliers.is_empty());
        assert_eq!(r.inlier_cost, 1.0 + 100.0 * 100.0);

        let r = mark_outliers(&x, &[0], 1).unwrap();
        assert_eq!(r.predicted_outliers, [2].into_iter().collect());
        assert_eq!(r.inlier_cost, 1.0);
        assert_eq!(r.assignments, vec![Some(0), Some(0), None]);

        assert!(mark_outliers(&x, &[0], 3).is_err());
    }

    #[test]
    fn mark_outliers_tie_rule_prefers_low_index_inliers() {
        // five points equidistant from the center: the two highest indices
        // are marked outliers
        let coords = vec![
            0.0, 0.0, // the center
            1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0, 1.0, 0.0,
        ];
        let x = PointSet::new(coords, 2).unwrap();
        let r = mark_outliers(&x, &[0], 2).unwrap();
        assert_eq!(r.predicted_outliers, [4, 5].into_iter().collect());
    }

    #[test]
    fn mark_outliers_cut_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let coords: Vec<f64> = (0..200).map(|_| rng.random_range(-50.0..50.0)).collect();
        let x = PointSet::new(coords, 2).unwrap();
        let r = mark_outliers(&x, &[0, 1, 2], 10).unwrap();
        let d2 = crate::cost::nearest_sq_dists(
            &x,
            &crate::cost::centers_from_indices(&x, &[0, 1, 2]).unwrap(),
        )
        .unwrap();
        let min_out = r
            .predicted_outliers
            .iter()
            .map(|&i| d2[i])
            .fold(f64::INFINITY, f64::min);
        let max_in = (0..x.n())
            .filter(|i| !r.predicted_outliers.contains(i))
            .map(|i| d2[i])
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(min_out >= max_in);
    }

    #[test]
    fn precision_recall_examples() {
        let s25: BTreeSet<usize> = (0..25).collect();
        assert_eq!(precision_recall(&s25, &s25), (Some(1.0), Some(1.0)));

        let a: BTreeSet<usize> = (0..5).collect();
        let b: BTreeSet<usize> = (10..15).collect();
        assert_eq!(precision_recall(&a, &b), (Some(0.0), Some(0.0)));

        // |z*| = 17, |z| = 21, overlap 4
        let truth: BTreeSet<usize> = (0..17).collect();
        let pred: BTreeSet<usize> = (13..34).collect();
        let (p, r) = precision_recall(&truth, &pred);
        assert!((p.unwrap() - 4.0 / 21.0).abs() < 1e-12);
        assert!((r.unwrap() - 4.0 / 17.0).abs() < 1e-12);

        let empty = BTreeSet::new();
        assert_eq!(precision_recall(&truth, &empty), (None, Some(0.0)));
        assert_eq!(precision_recall(&empty, &pred), (Some(0.0), None));
    }

    #[test]
    fn precision_equals_recall_when_sizes_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..50 {
            let truth: BTreeSet<usize> = (0..100)
                .filter(|_| rng.random::<f64>() < 0.3)
                .collect();
            if truth.is_empty() {
                continue;
            }
            let shift = rng.random_range(0..10);
            let pred: BTreeSet<usize> = truth.iter().map(|&i| (i + shift) % 100).collect();
            if pred.len() != truth.len() {
                continue;
            }
            let (p, r) = precision_recall(&truth, &pred);
            assert_eq!(p, r);
        }
    }

    #[test]
    fn summarize_examples() {
        let single = [RunRecord {
            cost: 2.0,
            precision: Some(0.5),
            recall: Some(0.25),
            seconds: 0.1,
        }];
        let rep = summarize(&single).unwrap();
        assert_eq!(rep.cost_min, 2.0);
        assert_eq!(rep.cost_avg, 2.0);
        assert_eq!(rep.cost_median, 2.0);
        assert_eq!(rep.precision_avg, Some(0.5));
        assert_eq!(rep.recall_median, Some(0.25));

        let runs: Vec<RunRecord> = [1.0, 2.0, 3.0, 4.0]
            .iter()
            .map(|&c| RunRecord {
                cost: c,
                precision: None,
                recall: None,
                seconds: 0.0,
            })
            .collect();
        let rep = summarize(&runs).unwrap();
        assert_eq!(rep.cost_min, 1.0);
        assert_eq!(rep.cost_avg, 2.5);
        assert_eq!(rep.cost_median, 2.5);
        assert_eq!(rep.precision_avg, None);

        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn lemma2_far_center_satisfies_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let coords: Vec<f64> = (0..60).map(|_| rng.random_range(-1.0..1.0)).collect();
        let a = PointSet::new(coords, 2).unwrap();
        let s = vec![vec![100.0, 0.0]];
        let rep = lemma2_check(&a, &s).unwrap();
        assert!(rep.hypothesis_holds);
        assert_eq!(rep.mean_distance_bound_holds, Some(true));
        assert_eq!(rep.b_size_bound_holds, Some(true));
        assert!(!rep.is_counterexample());
    }

    #[test]
    fn lemma2_center_at_mean_fails_hypothesis() {
        let a = line(&[-1.0, 0.0, 1.0]);
        let rep = lemma2_check(&a, &[vec![0.0]]).unwrap();
        assert!(!rep.hypothesis_holds);
        assert_eq!(rep.mean_distance_bound_holds, None);
    }

    #[test]
    fn lemma2_randomized_search_finds_no_counterexample() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 2_000 {
            let n = rng.random_range(2..30);
            let spread = rng.random_range(0.1..5.0);
            let coords: Vec<f64> = (0..n * 2)
                .map(|_| rng.random_range(-spread..spread))
                .collect();
            let a = PointSet::new(coords, 2).unwrap();
            let s: Vec<Vec<f64>> = (0..rng.random_range(1..4))
                .map(|_| vec![rng.random_range(-100.0..100.0), rng.random_range(-100.0..100.0)])
                .collect();
            let rep = lemma2_check(&a, &s).unwrap();
            if rep.hypothesis_holds {
                checked += 1;
                assert!(!rep.is_counterexample(), "counterexample: {rep:?}");
            }
        }
    }
}
