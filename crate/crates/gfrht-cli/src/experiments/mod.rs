//! The four experiment families.

pub mod anomaly_density;
pub mod anomaly_types;
pub mod edges;
pub mod sweep;

pub use anomaly_density::run_anomaly_density;
pub use anomaly_types::run_anomaly_types;
pub use edges::run_edges;
pub use sweep::run_sweep;

use std::sync::Arc;

use gfrht::{eigendecompose, EigenSystem, FrftOperator, GftOperator, Graph};
use ndarray::Array1;
use num_complex::Complex64;

use crate::error::Result;

/// Eigendecomposition plus both transform operators for one graph.
pub(crate) struct Operators {
    pub eig: Arc<EigenSystem<f64>>,
    pub gft: GftOperator<f64>,
    pub frft: Arc<FrftOperator<f64>>,
}

pub(crate) fn build_operators(graph: &Graph<f64>) -> Result<Operators> {
    let eig = Arc::new(eigendecompose(graph)?);
    let gft = GftOperator::new(eig.clone());
    let frft = Arc::new(FrftOperator::new(&gft)?);
    Ok(Operators { eig, gft, frft })
}

/// Min-max normalization into [0, 1]; zero-range input maps to all zeros.
pub(crate) fn min_max_normalize(values: &Array1<f64>) -> Array1<f64> {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    if range.is_nan() || range <= 0.0 {
        return Array1::zeros(values.len());
    }
    values.mapv(|v| (v - min) / range)
}

pub(crate) fn magnitudes(y: &Array1<Complex64>) -> Array1<f64> {
    y.mapv(|z| z.norm())
}

/// 1-based node labels (all files and reports) to 0-based indices.
pub(crate) fn labels_to_indices(labels: &[usize]) -> Vec<usize> {
    labels.iter().map(|&l| l - 1).collect()
}
