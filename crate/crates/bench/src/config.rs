//! Experiment configuration: dataset sources, algorithm parameters, and
//! validation performed before any run starts.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use okm::Algorithm;
use serde::{Deserialize, Serialize};

fn default_reps() -> usize {
    10
}

fn default_seed() -> u64 {
    42
}

fn default_side() -> f64 {
    100.0
}

fn default_sigma() -> f64 {
    1.0
}

/// Where the points come from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DatasetConfig {
    /// Planted Gaussian clusters plus uniform outliers.
    Synthetic {
        n: usize,
        d: usize,
        k: usize,
        z: usize,
        #[serde(default = "default_side")]
        side: f64,
        #[serde(default = "default_sigma")]
        sigma: f64,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    /// A directory (or data.csv) produced by `gen` or `prep`: coordinate
    /// columns followed by a 0/1 outlier column, no header.
    Prepared { path: PathBuf },
    /// Raw CSV plus an optional labeling recipe.
    Csv {
        path: PathBuf,
        numeric_columns: Vec<usize>,
        #[serde(default)]
        label_column: Option<usize>,
        #[serde(default)]
        has_header: bool,
        #[serde(default)]
        normalize: bool,
        #[serde(default)]
        recipe: Option<Recipe>,
    },
}

/// How ground-truth outliers are assigned to a loaded CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// Points outside the named classes are outliers.
    SmallClass { major: Vec<String> },
    /// Classes under this fraction of the data are outliers.
    MinFraction { fraction: f64 },
    /// Perturb a random subset with Gaussian noise and label it.
    Noise {
        #[serde(default)]
        count: Option<usize>,
        #[serde(default)]
        fraction: Option<f64>,
        /// Defaults to 5x the average per-column standard deviation.
        #[serde(default)]
        sigma: Option<f64>,
        #[serde(default = "default_seed")]
        seed: u64,
    },
}

/// One table row's worth of work: dataset, algorithm, parameters,
/// repetitions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub dataset: DatasetConfig,
    /// One of: rand, km++, tkm++, rkm++, robust.
    pub algorithm: String,
    pub k: usize,
    #[serde(default)]
    pub z: usize,
    /// Centers to draw; defaults to k, or ceil((1+c)k) when c is set.
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub eta: Option<f64>,
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub delta: Option<f64>,
    /// Bi-criteria oversampling parameter.
    #[serde(default)]
    pub c: Option<f64>,
    /// How many points to mark as outliers; defaults to z.
    #[serde(default)]
    pub predicted_z: Option<usize>,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_seed")]
    pub base_seed: u64,
    /// Presentation-only divisor applied to cost cells in markdown/csv.
    #[serde(default)]
    pub cost_scale: Option<f64>,
}

impl ExperimentConfig {
    pub fn algorithm(&self) -> Result<Algorithm> {
        self.algorithm
            .parse()
            .with_context(|| format!("config {:?}", self.name))
    }

    /// Number of centers the seeder draws.
    pub fn effective_t(&self) -> usize {
        if let Some(t) = self.t {
            return t;
        }
        match self.c {
            Some(c) => okm::RobustSeedConfig::bi_criteria_t(self.k, c),
            None => self.k,
        }
    }

    pub fn effective_predicted_z(&self) -> usize {
        self.predicted_z.unwrap_or(self.z)
    }

    /// Rejects invalid parameter combinations before any run happens.
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            bail!("reps must be >= 1");
        }
        if self.k == 0 {
            bail!("k must be >= 1");
        }
        let alg = self.algorithm()?;
        match alg {
            Algorithm::Robust => {
                if self.z == 0 {
                    bail!("robust requires z >= 1");
                }
                let eta = self.eta.or_else(|| self.beta.map(|b| 1.0 / b));
                match eta {
                    Some(e) if e > 0.0 => {}
                    _ => bail!("robust requires --eta > 0 (or --beta to derive eta = 1/beta)"),
                }
            }
            Algorithm::Tkmpp => {
                if self.z == 0 {
                    bail!("tkm++ requires z >= 1");
                }
                match self.beta {
                    Some(b) if b > 0.0 => {}
                    _ => bail!("tkm++ requires --beta > 0"),
                }
            }
            Algorithm::Rkmpp => {
                match self.alpha {
                    Some(a) if (0.0..=1.0).contains(&a) => {}
                    _ => bail!("rkm++ requires --alpha in [0, 1]"),
                }
                match self.delta {
                    Some(d) if d > 0.0 && d < 1.0 => {}
                    _ => bail!("rkm++ requires --delta in (0, 1)"),
                }
            }
            Algorithm::Rand | Algorithm::Kmpp => {}
        }
        if self.c.is_some() && alg != Algorithm::Robust {
            bail!("--c (bi-criteria oversampling) only applies to robust");
        }
        if let DatasetConfig::Csv {
            numeric_columns,
            recipe,
            label_column,
            ..
        } = &self.dataset
        {
            if numeric_columns.is_empty() {
                bail!("csv dataset needs at least one numeric column");
            }
            if matches!(
                recipe,
                Some(Recipe::SmallClass { .. }) | Some(Recipe::MinFraction { .. })
            ) && label_column.is_none()
            {
                bail!("class-based recipes need a label column");
            }
            if let Some(Recipe::MinFraction { fraction }) = recipe {
                if !(*fraction > 0.0 && *fraction <= 1.0) {
                    bail!("min_fraction must be in (0, 1]");
                }
            }
        }
        Ok(())
    }

    /// Human-readable parameter echo for the table row.
    pub fn param_echo(&self) -> String {
        let mut parts = vec![
            format!("k={}", self.k),
            format!("z={}", self.z),
            format!("t={}", self.effective_t()),
        ];
        if let Some(eta) = self.eta {
            parts.push(format!("eta={eta}"));
        }
        if let Some(beta) = self.beta {
            parts.push(format!("beta={beta}"));
        }
        if let Some(alpha) = self.alpha {
            parts.push(format!("alpha={alpha}"));
        }
        if let Some(delta) = self.delta {
            parts.push(format!("delta={delta}"));
        }
        if let Some(c) = self.c {
            parts.push(format!("c={c}"));
        }
        parts.push(format!("reps={}", self.reps));
        parts.push(format!("seed={}", self.base_seed));
        parts.join(" ")
    }
}

/// Loads a suite: a JSON array of experiment configs.
pub fn load_suite(path: &std::path::Path) -> Result<Vec<ExperimentConfig>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let configs: Vec<ExperimentConfig> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(configs)
}

#[cfg(test)]
pub mod tests_support {
    use super::*;

    /// A small synthetic experiment with no algorithm-specific parameters
    /// filled in; tests set eta/beta/alpha/delta as needed.
    pub fn synthetic_config(algorithm: &str) -> ExperimentConfig {
        ExperimentConfig {
            name: None,
            dataset: DatasetConfig::Synthetic {
                n: 100,
                d: 2,
                k: 5,
                z: 5,
                side: 100.0,
                sigma: 1.0,
                seed: 1,
            },
            algorithm: algorithm.to_string(),
            k: 5,
            z: 5,
            t: None,
            eta: None,
            beta: None,
            alpha: None,
            delta: None,
            c: None,
            predicted_z: None,
            reps: 10,
            base_seed: 42,
            cost_scale: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::synthetic_config as base;
    use super::*;

    #[test]
    fn parameter_sets_must_match_algorithm() {
        assert!(base("rand").validate().is_ok());
        assert!(base("km++").validate().is_ok());
        assert!(base("robust").validate().is_err());
        let mut cfg = base("robust");
        cfg.eta = Some(2.0);
        assert!(cfg.validate().is_ok());
        cfg.eta = None;
        cfg.beta = Some(0.5); // eta derived as 1/beta
        assert!(cfg.validate().is_ok());

        let mut cfg = base("tkm++");
        assert!(cfg.validate().is_err());
        cfg.beta = Some(0.5);
        assert!(cfg.validate().is_ok());

        let mut cfg = base("rkm++");
        assert!(cfg.validate().is_err());
        cfg.alpha = Some(0.5);
        cfg.delta = Some(0.1);
        assert!(cfg.validate().is_ok());

        let mut cfg = base("km++");
        cfg.c = Some(0.5);
        assert!(cfg.validate().is_err());

        let mut cfg = base("rand");
        cfg.reps = 0;
        assert!(cfg.validate().is_err());

        assert!(base("mystery").validate().is_err());
    }

    #[test]
    fn effective_t_prefers_explicit_then_bi_criteria() {
        let mut cfg = base("robust");
        cfg.eta = Some(2.0);
        assert_eq!(cfg.effective_t(), 5);
        cfg.c = Some(0.5);
        assert_eq!(cfg.effective_t(), 8); // ceil(1.5 * 5)
        cfg.t = Some(11);
        assert_eq!(cfg.effective_t(), 11);
    }

    #[test]
    fn suite_json_roundtrip() {
        let cfgs = vec![base("rand"), base("km++")];
        let text = serde_json::to_string(&cfgs).unwrap();
        let back: Vec<ExperimentConfig> = serde_json::from_str(&text).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[1].algorithm, "km++");
    }
}
