//! Outlier-robust k-means seeding: a thresholded D^2-sampling seeder,
//! the classical baselines, a robust cost engine with top-z exclusion,
//! evaluation metrics, data preparation, and a brute-force oracle for
//! tiny instances.

pub mod cost;
pub mod data;
pub mod error;
pub mod eval;
pub mod oracle;
pub mod points;
pub mod seeding;
pub mod state;

pub use cost::{
    centers_from_indices, kmeans_cost, lemma1_witness, nearest_sq_dists, robust_cost,
    robust_cost_of_dists, squared_distance, thresholded_potential, CostParams,
};
pub use data::{
    default_noise_sigma, generate_synthetic, inject_gaussian_noise, label_small_classes,
    load_csv, zscore_normalize, DatasetManifest, LabeledDataset, MajorClasses, NoiseAmount,
    Provenance, SyntheticSpec,
};
pub use error::{Error, Result};
pub use eval::{
    lemma2_check, mark_outliers, median, precision_recall, summarize, ClusteringResult,
    Lemma2Report, MetricsReport, RunRecord,
};
pub use oracle::{brute_force_oracle, OracleSolution, ORACLE_MAX_K, ORACLE_MAX_N, ORACLE_MAX_Z};
pub use points::PointSet;
pub use seeding::{
    kmeanspp_seed, mixture_candidates, random_seed, rkmpp_seed, robust_seed,
    robust_seed_continue, robust_weights, sample_index, seed, tkmpp_seed, Algorithm,
    RkmConfig, RobustSeedConfig, SeedSpec, TkmConfig,
};
pub use state::SeedingState;
