//! Library side of the experiment harness: config parsing, experiment
//! runners, and report writers. The `gfrht` binary is a thin CLI over
//! [`run_from_config`].

pub mod config;
pub mod error;
pub mod experiments;
pub mod pgm;
pub mod report;

use std::path::Path;

use config::ExperimentConfig;
use error::{HarnessError, Result};
use report::{write_json, Provenance, RunReport};

/// Runs the experiment described by a parsed config into `out_dir`,
/// writing `report.json` plus the experiment's CSV/PGM outputs. Returns
/// the path of the JSON report.
pub fn run_from_config(
    cfg: ExperimentConfig,
    config_bytes: &[u8],
    seed_override: Option<u64>,
    out_dir: &Path,
) -> Result<std::path::PathBuf> {
    std::fs::create_dir_all(out_dir)?;
    let kind = cfg.kind();
    let report_path = out_dir.join("report.json");
    match cfg {
        ExperimentConfig::Sweep(raw) => {
            let resolved = raw.resolve(seed_override)?;
            let provenance = Provenance::new(kind, resolved.seed, config_bytes);
            let results = experiments::run_sweep(&resolved, out_dir)?;
            write_json(
                &report_path,
                &RunReport {
                    provenance,
                    config: resolved,
                    results,
                },
            )?;
        }
        ExperimentConfig::Edges(raw) => {
            let resolved = raw.resolve(seed_override)?;
            let provenance = Provenance::new(kind, resolved.seed, config_bytes);
            let results = experiments::run_edges(&resolved, out_dir)?;
            write_json(
                &report_path,
                &RunReport {
                    provenance,
                    config: resolved,
                    results,
                },
            )?;
        }
        ExperimentConfig::AnomalyDensity(raw) => {
            let resolved = raw.resolve(seed_override)?;
            let provenance = Provenance::new(kind, resolved.seed, config_bytes);
            let results = experiments::run_anomaly_density(&resolved, out_dir)?;
            write_json(
                &report_path,
                &RunReport {
                    provenance,
                    config: resolved,
                    results,
                },
            )?;
        }
        ExperimentConfig::AnomalyTypes(raw) => {
            let resolved = raw.resolve(seed_override)?;
            let provenance = Provenance::new(kind, resolved.seed, config_bytes);
            let results = experiments::run_anomaly_types(&resolved, out_dir)?;
            write_json(
                &report_path,
                &RunReport {
                    provenance,
                    config: resolved,
                    results,
                },
            )?;
        }
    }
    Ok(report_path)
}

/// Convenience entry point: load a config file, check it matches the
/// requested kind, and run it.
pub fn run(
    kind: &str,
    config_path: &Path,
    seed_override: Option<u64>,
    out_dir: &Path,
) -> Result<std::path::PathBuf> {
    let (cfg, bytes) = config::load(config_path)?;
    if cfg.kind() != kind {
        return Err(HarnessError::Config(format!(
            "config kind {:?} does not match the {kind:?} command",
            cfg.kind()
        )));
    }
    run_from_config(cfg, &bytes, seed_override, out_dir)
}
