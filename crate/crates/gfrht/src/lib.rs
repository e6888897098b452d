//! Graph signal processing with the dual-parameter fractional Hilbert
//! transform.
//!
//! The pipeline runs: directed weighted [`Graph`] -> complex
//! [`EigenSystem`] -> graph Fourier operator ([`GftOperator`]) -> fractional
//! operator family ([`FrftOperator`]) -> masked fractional filtering
//! ([`HilbertConfig`]) -> analytic signals and modulation features
//! ([`analytic`]). [`metrics`] and [`search`] cover the quantitative
//! evaluation (SNR, precision@k, RMSE, image metrics) and the exhaustive
//! `(alpha, beta)` parameter search.
//!
//! Everything is generic over the scalar (`f32` / `f64`) through the
//! [`Scalar`] trait; the `*64` aliases below are the types the experiment
//! harness uses. Signals are plain `ndarray` vectors: `Array1<T>` for real
//! signals, `Array1<Cplx<T>>` for complex ones, validated by the operations
//! that consume them.

pub mod analytic;
pub mod eig;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hilbert;
pub mod metrics;
pub mod rng;
pub mod scalar;
pub mod search;
pub mod transforms;

pub use analytic::{gfras, modulation_features, unwrap_phase, AnalyticFeatures};
pub use eig::{eigendecompose, eigendecompose_with_tol, EigenSystem};
pub use error::{Error, Result};
pub use generate::{GraphSpec, SOCIAL5};
pub use graph::{read_adjacency, write_adjacency, Graph};
pub use hilbert::{
    classify, ght, ght_real, poly_filter_apply, poly_filter_coeffs, reduce_angle, HilbertConfig,
    SpectrumClass, TransferDiag,
};
pub use metrics::{image_metrics, precision_at_k, rmse, snr_db, ImageMetrics, MetricReport};
pub use scalar::{Cplx, Scalar};
pub use search::{default_alpha_grid, default_beta_grid, grid_search, GridResult};
pub use transforms::{to_complex, FrftOperator, GftOperator};

pub type Graph32 = Graph<f32>;
pub type Graph64 = Graph<f64>;
pub type EigenSystem32 = EigenSystem<f32>;
pub type EigenSystem64 = EigenSystem<f64>;
pub type GftOperator32 = GftOperator<f32>;
pub type GftOperator64 = GftOperator<f64>;
pub type FrftOperator32 = FrftOperator<f32>;
pub type FrftOperator64 = FrftOperator<f64>;
pub type HilbertConfig32 = HilbertConfig<f32>;
pub type HilbertConfig64 = HilbertConfig<f64>;
pub type AnalyticFeatures32 = AnalyticFeatures<f32>;
pub type AnalyticFeatures64 = AnalyticFeatures<f64>;
pub type GridResult64 = GridResult<f64>;
pub type MetricReport64 = MetricReport<f64>;
