//! Parameter sweep on the five-node social network: evaluates the transform
//! for every (order, angle) pair and writes the per-node outputs (real and
//! imaginary parts) as plot-ready CSV.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use gfrht::{ght_real, GraphSpec, HilbertConfig};
use ndarray::Array1;
use serde::Serialize;

use crate::config::ResolvedSweep;
use crate::error::{HarnessError, Result};
use crate::experiments::build_operators;
use crate::report::{fmt, write_csv};

#[derive(Debug, Clone, Serialize)]
pub struct SweepResults {
    /// (alpha, beta, max |Im| over nodes) per grid cell.
    pub cells: Vec<SweepCell>,
    /// Largest deviation from the input over all zero-angle cells.
    pub identity_residual: f64,
    /// Deviation of the (1, pi/2) cell from the conventional transform,
    /// when that cell is part of the sweep.
    pub ght_residual: Option<f64>,
    pub csv: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepCell {
    pub alpha: f64,
    pub beta: f64,
    pub max_abs_imag: f64,
}

pub fn run_sweep(cfg: &ResolvedSweep, out_dir: &Path) -> Result<SweepResults> {
    let graph = GraphSpec::Social5.generate::<f64>(cfg.seed)?;
    let ops = build_operators(&graph)?;
    let x = Array1::from_vec(cfg.signal.clone());
    let ght_out = ght_real(&ops.gft, &ops.eig, &x);

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut cells = Vec::new();
    let mut identity_residual = 0.0f64;
    let mut ght_residual: Option<f64> = None;

    for &alpha in &cfg.alpha_list {
        for &beta in &cfg.beta_list {
            let hc = HilbertConfig::new(alpha, beta, ops.frft.clone(), ops.eig.clone())?;
            let y = hc.gfrht_real(&x)?;
            let mut max_imag = 0.0f64;
            for (node, value) in y.iter().enumerate() {
                max_imag = max_imag.max(value.im.abs());
                rows.push(vec![
                    fmt(alpha),
                    fmt(beta),
                    (node + 1).to_string(),
                    fmt(x[node]),
                    fmt(value.re),
                    fmt(value.im),
                ]);
            }
            if beta == 0.0 {
                let dev = y
                    .iter()
                    .zip(x.iter())
                    .map(|(a, &b)| (a - b).norm())
                    .fold(0.0, f64::max);
                identity_residual = identity_residual.max(dev);
                if dev >= 1e-9 {
                    return Err(HarnessError::Numerical(format!(
                        "zero-angle cell (alpha={alpha}) deviates from the input by {dev:e}"
                    )));
                }
            }
            if alpha == 1.0 && beta == FRAC_PI_2 {
                let dev = y
                    .iter()
                    .zip(ght_out.iter())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                ght_residual = Some(dev);
                if dev >= 1e-9 {
                    return Err(HarnessError::Numerical(format!(
                        "(1, pi/2) cell deviates from the conventional transform by {dev:e}"
                    )));
                }
            }
            cells.push(SweepCell {
                alpha,
                beta,
                max_abs_imag: max_imag,
            });
        }
    }

    let csv_name = "sweep.csv";
    write_csv(out_dir.join(csv_name), "alpha,beta,node,x,re,im", rows)?;
    Ok(SweepResults {
        cells,
        identity_residual,
        ght_residual,
        csv: csv_name.to_string(),
    })
}
