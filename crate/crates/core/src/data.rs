//! Synthetic instance generation, CSV ingestion, z-score normalization,
//! and the two real-data outlier-labeling recipes.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::PointSet;

/// Parameters for the planted-cluster generator: k + z uniform draws from
/// a hypercube, the first k of which become cluster means.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyntheticSpec {
    /// Total inlier count; each cluster receives floor(n/k) points with
    /// the remainder spread over the lowest-index clusters.
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub z: usize,
    /// Hypercube side length.
    pub side: f64,
    /// Cluster standard deviation.
    pub sigma: f64,
}

impl SyntheticSpec {
    pub fn new(n: usize, d: usize, k: usize, z: usize) -> Self {
        Self {
            n,
            d,
            k,
            z,
            side: 100.0,
            sigma: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Synthetic,
    SmallClass,
    InjectedNoise,
    /// Loaded from file, no outlier labels applied yet.
    Unlabeled,
}

/// A point set with ground-truth outlier labels and a record of how the
/// labels were produced.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    pub points: PointSet,
    pub provenance: Provenance,
    pub class_labels: Option<Vec<String>>,
    /// Planted cluster means, when the data is synthetic.
    pub planted_means: Option<Vec<Vec<f64>>>,
}

impl LabeledDataset {
    pub fn true_outliers(&self) -> Option<&BTreeSet<usize>> {
        self.points.true_outliers()
    }
}

/// Provenance record emitted next to generated/prepared datasets so every
/// table row is traceable to its inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub provenance: Provenance,
    pub n_points: usize,
    pub d: usize,
    pub true_outlier_count: usize,
    pub recipe: String,
    pub rng_seed: Option<u64>,
}

/// Draws k + z uniform points from [0, side]^d, plants Gaussian clusters
/// of total size n around the first k, and appends the remaining z as
/// labeled outliers. Output has n + z points.
pub fn generate_synthetic<R: Rng + ?Sized>(
    spec: &SyntheticSpec,
    rng: &mut R,
) -> Result<LabeledDataset> {
    if spec.k + spec.z == 0 {
        return Err(Error::InvalidParameter("k + z must be >= 1".into()));
    }
    if spec.k > 0 && spec.n < spec.k {
        return Err(Error::InvalidParameter("n must be >= k".into()));
    }
    if !(spec.side > 0.0) || spec.sigma < 0.0 {
        return Err(Error::InvalidParameter(
            "side must be > 0 and sigma >= 0".into(),
        ));
    }
    if spec.d == 0 {
        return Err(Error::InvalidParameter("d must be >= 1".into()));
    }

    let anchors: Vec<Vec<f64>> = (0..spec.k + spec.z)
        .map(|_| (0..spec.d).map(|_| rng.random_range(0.0..spec.side)).collect())
        .collect();
    let means = &anchors[..spec.k];

    let noise = Normal::new(0.0, spec.sigma)
        .map_err(|e| Error::InvalidParameter(format!("bad sigma: {e}")))?;

    let mut coords = Vec::with_capacity((spec.n + spec.z) * spec.d);
    if spec.k > 0 {
        let base = spec.n / spec.k;
        let remainder = spec.n % spec.k;
        for (j, mean) in means.iter().enumerate() {
            let count = base + usize::from(j < remainder);
            for _ in 0..count {
                for &m in mean {
                    coords.push(m + noise.sample(rng));
                }
            }
        }
    }
    for outlier in &anchors[spec.k..] {
        coords.extend_from_slice(outlier);
    }

    let mut points = PointSet::new(coords, spec.d)?;
    let inliers = if spec.k > 0 { spec.n } else { 0 };
    points.set_true_outliers((inliers..inliers + spec.z).collect())?;
    Ok(LabeledDataset {
        points,
        provenance: Provenance::Synthetic,
        class_labels: None,
        planted_means: Some(means.to_vec()),
    })
}

/// Loads the selected numeric columns of a CSV file into a dense point
/// set, capturing an optional label column.
pub fn load_csv(
    path: &Path,
    numeric_columns: &[usize],
    label_column: Option<usize>,
    has_header: bool,
) -> Result<LabeledDataset> {
    if numeric_columns.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one numeric column required".into(),
        ));
    }
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .from_reader(file);

    let mut coords = Vec::new();
    let mut labels = Vec::new();
    let mut expected_fields: Option<usize> = None;
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        let row = row_idx + usize::from(has_header) + 1; // 1-based file row
        match expected_fields {
            None => expected_fields = Some(record.len()),
            Some(expected) if record.len() != expected => {
                return Err(Error::RaggedRow {
                    row,
                    expected,
                    found: record.len(),
                });
            }
            _ => {}
        }
        for &col in numeric_columns {
            let cell = record.get(col).ok_or(Error::RaggedRow {
                row,
                expected: col + 1,
                found: record.len(),
            })?;
            let value: f64 = cell.trim().parse().map_err(|_| Error::CsvCell {
                row,
                column: col,
                value: cell.to_string(),
            })?;
            if !value.is_finite() {
                return Err(Error::CsvCell {
                    row,
                    column: col,
                    value: cell.to_string(),
                });
            }
            coords.push(value);
        }
        if let Some(col) = label_column {
            let cell = record.get(col).ok_or(Error::RaggedRow {
                row,
                expected: col + 1,
                found: record.len(),
            })?;
            labels.push(cell.trim().to_string());
        }
    }

    let points = PointSet::new(coords, numeric_columns.len())?;
    Ok(LabeledDataset {
        points,
        provenance: Provenance::Unlabeled,
        class_labels: label_column.map(|_| labels),
        planted_means: None,
    })
}

/// Transforms each column to zero mean and unit standard deviation
/// (population convention, divide by n). Zero-variance columns are
/// centered only.
pub fn zscore_normalize(x: &PointSet) -> Result<PointSet> {
    if x.n() < 2 {
        return Err(Error::InvalidParameter(
            "normalization needs at least 2 points".into(),
        ));
    }
    let n = x.n() as f64;
    let d = x.d();
    let mut mean = vec![0.0; d];
    for row in x.rows() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= n;
    }
    let mut var = vec![0.0; d];
    for row in x.rows() {
        for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
            let diff = v - m;
            *s += diff * diff;
        }
    }
    let std: Vec<f64> = var.iter().map(|s| (s / n).sqrt()).collect();

    let mut coords = Vec::with_capacity(x.n() * d);
    for row in x.rows() {
        for j in 0..d {
            let centered = row[j] - mean[j];
            coords.push(if std[j] > 0.0 { centered / std[j] } else { 0.0 });
        }
    }
    let mut out = PointSet::new(coords, d)?;
    if let Some(outliers) = x.true_outliers() {
        out.set_true_outliers(outliers.clone())?;
    }
    Ok(out)
}

/// How to decide which classes are "major" (everything else is an outlier).
#[derive(Debug, Clone)]
pub enum MajorClasses {
    /// Explicit set of class names to keep as inliers.
    Named(BTreeSet<String>),
    /// Classes holding at least this fraction of all points are major.
    MinFraction(f64),
}

/// Marks every point whose class is outside the major set as a true
/// outlier.
pub fn label_small_classes(
    points: PointSet,
    class_labels: &[String],
    major: &MajorClasses,
) -> Result<LabeledDataset> {
    if class_labels.len() != points.n() {
        return Err(Error::InvalidParameter(format!(
            "{} class labels for {} points",
            class_labels.len(),
            points.n()
        )));
    }
    let major_set: BTreeSet<&str> = match major {
        MajorClasses::Named(names) => {
            if names.is_empty() {
                return Err(Error::InvalidParameter("empty major-class set".into()));
            }
            names.iter().map(String::as_str).collect()
        }
        MajorClasses::MinFraction(f) => {
            if !(*f > 0.0 && *f <= 1.0) {
                return Err(Error::InvalidParameter(
                    "min_fraction must be in (0, 1]".into(),
                ));
            }
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for label in class_labels {
                *counts.entry(label.as_str()).or_default() += 1;
            }
            let threshold = f * points.n() as f64;
            counts
                .into_iter()
                .filter(|&(_, c)| c as f64 >= threshold)
                .map(|(name, _)| name)
                .collect()
        }
    };
    let outliers: BTreeSet<usize> = class_labels
        .iter()
        .enumerate()
        .filter(|(_, label)| !major_set.contains(label.as_str()))
        .map(|(i, _)| i)
        .collect();
    let mut points = points;
    points.set_true_outliers(outliers)?;
    Ok(LabeledDataset {
        points,
        provenance: Provenance::SmallClass,
        class_labels: Some(class_labels.to_vec()),
        planted_means: None,
    })
}

/// How many points to perturb.
#[derive(Debug, Clone, Copy)]
pub enum NoiseAmount {
    Fraction(f64),
    Count(usize),
}

/// Adds independent Gaussian noise to a random subset of points and
/// records that subset as the true outliers.
pub fn inject_gaussian_noise<R: Rng + ?Sized>(
    points: PointSet,
    amount: NoiseAmount,
    noise_sigma: f64,
    rng: &mut R,
) -> Result<LabeledDataset> {
    let n = points.n();
    let count = match amount {
        NoiseAmount::Count(c) => c,
        NoiseAmount::Fraction(f) => {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::InvalidParameter(
                    "noise fraction must be in (0, 1)".into(),
                ));
            }
            ((f * n as f64).round() as usize).max(1)
        }
    };
    if count == 0 || count >= n {
        return Err(Error::InvalidParameter(format!(
            "noise count {count} must be in 1..n = {n}"
        )));
    }
    if !(noise_sigma > 0.0) {
        return Err(Error::InvalidParameter("noise_sigma must be > 0".into()));
    }
    let selected: BTreeSet<usize> = rand::seq::index::sample(rng, n, count)
        .into_iter()
        .collect();
    let noise = Normal::new(0.0, noise_sigma)
        .map_err(|e| Error::InvalidParameter(format!("bad noise_sigma: {e}")))?;
    let d = points.d();
    let mut coords = points.coords().to_vec();
    for &i in &selected {
        for c in coords[i * d..(i + 1) * d].iter_mut() {
            *c += noise.sample(rng);
        }
    }
    let mut out = PointSet::new(coords, d)?;
    out.set_true_outliers(selected)?;
    Ok(LabeledDataset {
        points: out,
        provenance: Provenance::InjectedNoise,
        class_labels: None,
        planted_means: None,
    })
}

/// Default noise scale for the injected-outlier recipe: 5x the average
/// per-column standard deviation of the data.
pub fn default_noise_sigma(x: &PointSet) -> f64 {
    let n = x.n() as f64;
    let d = x.d();
    let mut mean = vec![0.0; d];
    for row in x.rows() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= n;
    }
    let mut var = vec![0.0; d];
    for row in x.rows() {
        for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
            let diff = v - m;
            *s += diff * diff;
        }
    }
    let avg_std = var.iter().map(|s| (s / n).sqrt()).sum::<f64>() / d as f64;
    5.0 * avg_std
}
