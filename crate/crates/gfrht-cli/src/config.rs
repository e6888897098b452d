//! Experiment configuration files.
//!
//! Configs are TOML with a `kind` discriminator; unknown keys are rejected
//! so typos fail loudly. Every optional field has a documented default,
//! echoed back in the run report so a report alone is enough to reproduce
//! the run. See `assets/configs/` for commented examples.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Raw config file contents.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentConfig {
    Sweep(SweepConfig),
    Edges(EdgesConfig),
    AnomalyDensity(AnomalyDensityConfig),
    AnomalyTypes(AnomalyTypesConfig),
}

impl ExperimentConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            ExperimentConfig::Sweep(_) => "sweep",
            ExperimentConfig::Edges(_) => "edges",
            ExperimentConfig::AnomalyDensity(_) => "anomaly-density",
            ExperimentConfig::AnomalyTypes(_) => "anomaly-types",
        }
    }
}

/// Loads and parses a config file; returns the parsed config plus the raw
/// bytes (hashed into the report provenance).
pub fn load(path: impl AsRef<Path>) -> Result<(ExperimentConfig, Vec<u8>)> {
    let bytes = std::fs::read(path.as_ref())?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| HarnessError::Config(format!("config is not UTF-8: {e}")))?;
    let cfg: ExperimentConfig =
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
    Ok((cfg, bytes))
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub seed: Option<u64>,
    /// Signal on the five nodes; defaults to [0.8, 0.3, 0.5, 0.2, 0.6].
    pub signal: Option<Vec<f64>>,
    /// Fractional orders; defaults to [0, 0.5, 1].
    pub alpha_list: Option<Vec<f64>>,
    /// Angles in radians; defaults to [0, pi/4, pi/2].
    pub beta_list: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolvedSweep {
    pub seed: u64,
    pub signal: Vec<f64>,
    pub alpha_list: Vec<f64>,
    pub beta_list: Vec<f64>,
}

impl SweepConfig {
    pub fn resolve(self, seed_override: Option<u64>) -> Result<ResolvedSweep> {
        let signal = self.signal.unwrap_or_else(|| vec![0.8, 0.3, 0.5, 0.2, 0.6]);
        if signal.len() != 5 {
            return Err(HarnessError::Config(format!(
                "sweep signal must have 5 entries, got {}",
                signal.len()
            )));
        }
        Ok(ResolvedSweep {
            seed: seed_override.or(self.seed).unwrap_or(0),
            signal,
            alpha_list: self.alpha_list.unwrap_or_else(|| vec![0.0, 0.5, 1.0]),
            beta_list: self
                .beta_list
                .unwrap_or_else(|| vec![0.0, PI / 4.0, FRAC_PI_2]),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgesConfig {
    /// Path to a plain (P2) PGM image, square, side 8..=64.
    pub image: PathBuf,
    pub seed: Option<u64>,
    /// Fractional order; defaults to 0.7.
    pub alpha: Option<f64>,
    /// Angle in radians; defaults to pi/10.
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolvedEdges {
    pub image: PathBuf,
    pub seed: u64,
    pub alpha: f64,
    pub beta: f64,
}

impl EdgesConfig {
    pub fn resolve(self, seed_override: Option<u64>) -> Result<ResolvedEdges> {
        Ok(ResolvedEdges {
            image: self.image,
            seed: seed_override.or(self.seed).unwrap_or(0),
            alpha: self.alpha.unwrap_or(0.7),
            beta: self.beta.unwrap_or(PI / 10.0),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnomalyDensityConfig {
    /// Mandatory: the experiment draws random community weights.
    pub seed: Option<u64>,
    /// Cross-community edge densities; defaults to [0.01, 0.10].
    pub densities: Option<Vec<f64>>,
    /// Fractional order; defaults to 1.1.
    pub alpha: Option<f64>,
    /// Angle in radians; defaults to pi/20.
    pub beta: Option<f64>,
    /// Precision cut-off; defaults to the anomaly-set size 6.
    pub k: Option<usize>,
    /// Anomalous node labels (1-based); defaults to 18..=23.
    pub truth_nodes: Option<Vec<usize>>,
    pub communities: Option<usize>,
    pub community_size: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolvedAnomalyDensity {
    pub seed: u64,
    pub densities: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub k: usize,
    pub truth_nodes: Vec<usize>,
    pub communities: usize,
    pub community_size: usize,
}

impl AnomalyDensityConfig {
    pub fn resolve(self, seed_override: Option<u64>) -> Result<ResolvedAnomalyDensity> {
        let seed = seed_override
            .or(self.seed)
            .ok_or_else(|| HarnessError::Config("anomaly-density requires a seed".into()))?;
        let communities = self.communities.unwrap_or(10);
        let community_size = self.community_size.unwrap_or(6);
        let n = communities * community_size;
        let truth_nodes = self.truth_nodes.unwrap_or_else(|| (18..=23).collect());
        if truth_nodes.is_empty() || truth_nodes.iter().any(|&l| l == 0 || l > n) {
            return Err(HarnessError::Config(format!(
                "truth_nodes must be 1-based labels within 1..={n}"
            )));
        }
        let unique: std::collections::BTreeSet<usize> = truth_nodes.iter().copied().collect();
        if unique.len() != truth_nodes.len() {
            return Err(HarnessError::Config(
                "truth_nodes must not contain duplicates".into(),
            ));
        }
        Ok(ResolvedAnomalyDensity {
            seed,
            densities: self.densities.unwrap_or_else(|| vec![0.01, 0.10]),
            alpha: self.alpha.unwrap_or(1.1),
            beta: self.beta.unwrap_or(PI / 20.0),
            k: self.k.unwrap_or(6),
            truth_nodes,
            communities,
            community_size,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnomalyTypesConfig {
    /// Mandatory: graphs, anomaly placement, and noise are all random.
    pub seed: Option<u64>,
    pub communities: Option<usize>,
    pub community_size: Option<usize>,
    pub inter_density: Option<f64>,
    pub scale_free_nodes: Option<usize>,
    pub scale_free_edges: Option<usize>,
    pub noise_sigma: Option<f64>,
    pub low_anomaly_nodes: Option<usize>,
    pub high_anomaly_nodes: Option<usize>,
    pub impulse_anomaly_nodes: Option<usize>,
    pub impulse_value: Option<f64>,
    /// Overrides the default 21-point grids when present.
    pub alpha_grid: Option<Vec<f64>>,
    pub beta_grid: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolvedAnomalyTypes {
    pub seed: u64,
    pub communities: usize,
    pub community_size: usize,
    pub inter_density: f64,
    pub scale_free_nodes: usize,
    pub scale_free_edges: usize,
    pub noise_sigma: f64,
    pub low_anomaly_nodes: usize,
    pub high_anomaly_nodes: usize,
    pub impulse_anomaly_nodes: usize,
    pub impulse_value: f64,
    pub alpha_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
}

impl AnomalyTypesConfig {
    pub fn resolve(self, seed_override: Option<u64>) -> Result<ResolvedAnomalyTypes> {
        let seed = seed_override
            .or(self.seed)
            .ok_or_else(|| HarnessError::Config("anomaly-types requires a seed".into()))?;
        Ok(ResolvedAnomalyTypes {
            seed,
            communities: self.communities.unwrap_or(10),
            community_size: self.community_size.unwrap_or(5),
            inter_density: self.inter_density.unwrap_or(0.05),
            scale_free_nodes: self.scale_free_nodes.unwrap_or(50),
            scale_free_edges: self.scale_free_edges.unwrap_or(2),
            noise_sigma: self.noise_sigma.unwrap_or(0.1),
            low_anomaly_nodes: self.low_anomaly_nodes.unwrap_or(3),
            high_anomaly_nodes: self.high_anomaly_nodes.unwrap_or(5),
            impulse_anomaly_nodes: self.impulse_anomaly_nodes.unwrap_or(4),
            impulse_value: self.impulse_value.unwrap_or(2.0),
            alpha_grid: self
                .alpha_grid
                .unwrap_or_else(gfrht::default_alpha_grid::<f64>),
            beta_grid: self
                .beta_grid
                .unwrap_or_else(gfrht::default_beta_grid::<f64>),
        })
    }
}
