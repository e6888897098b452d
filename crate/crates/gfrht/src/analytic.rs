//! Fractional analytic signals and their modulation features.
//!
//! The analytic signal of a real graph signal is `x + i * H(x)` with `H` the
//! fractional Hilbert transform. Amplitude, wrapped phase, sequentially
//! unwrapped phase, and the graph frequency-modulation vector
//! `phi_u - A * phi_u` derive from it.

use ndarray::{Array1, ArrayView1};
use ndarray_linalg::Scalar as NdScalar;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hilbert::HilbertConfig;
use crate::scalar::{Cplx, Scalar};

/// Analytic signal plus derived modulation features.
#[derive(Debug, Clone)]
pub struct AnalyticFeatures<T: Scalar> {
    pub gfras: Array1<Cplx<T>>,
    /// `|gfras|` per node.
    pub amplitude: Array1<T>,
    /// Phase wrapped to `(-pi, pi]`.
    pub phase: Array1<T>,
    /// Sequentially unwrapped phase (ascending node index, jump threshold
    /// pi); differs from `phase` by exact multiples of `2*pi`.
    pub phase_unwrapped: Array1<T>,
    /// `phase_unwrapped - A * phase_unwrapped`.
    pub freq_mod: Array1<T>,
    pub alpha: T,
    pub beta: T,
    /// Nodes where the analytic signal magnitude was too small to define a
    /// phase; their phase is reported as zero.
    pub undefined_phase: Vec<usize>,
}

/// Analytic signal `x + i * H(x)` of a real signal.
pub fn gfras<T: Scalar>(cfg: &HilbertConfig<T>, x: &Array1<T>) -> Result<Array1<Cplx<T>>> {
    let h = cfg.gfrht_real(x)?;
    let i = T::complex(0.0, 1.0);
    Ok(Array1::from_shape_fn(x.len(), |k| x[k].as_c() + i * h[k]))
}

/// Wraps an angle into `(-pi, pi]`.
fn wrap_phase<T: Scalar>(p: T) -> T {
    if p <= -T::PI() {
        T::PI()
    } else {
        p
    }
}

/// Sequential phase unwrap over node index order. Each step adds the exact
/// multiple of `2*pi` that brings the increment into `(-pi, pi]`.
pub fn unwrap_phase<T: Scalar>(phase: ArrayView1<T>) -> Array1<T> {
    let n = phase.len();
    let mut out = Array1::zeros(n);
    if n == 0 {
        return out;
    }
    out[0] = phase[0];
    let mut turns: i64 = 0;
    for k in 1..n {
        let delta = phase[k] - phase[k - 1];
        if delta > T::PI() {
            turns -= 1;
        } else if delta <= -T::PI() {
            turns += 1;
        }
        out[k] = phase[k] + T::TAU() * T::from_i64(turns).unwrap();
    }
    out
}

/// Computes the analytic signal and all modulation features. The graph
/// supplies the adjacency for the frequency-modulation difference; in the
/// experiments it is the same (normalized, where applicable) instance the
/// transform was built on.
pub fn modulation_features<T: Scalar>(
    cfg: &HilbertConfig<T>,
    graph: &Graph<T>,
    x: &Array1<T>,
) -> Result<AnalyticFeatures<T>> {
    if graph.n() != x.len() {
        return Err(Error::LengthMismatch {
            expected: graph.n(),
            got: x.len(),
        });
    }
    let analytic = gfras(cfg, x)?;
    let n = analytic.len();

    let amplitude: Array1<T> = analytic.mapv(|z| z.abs());
    let max_amp = amplitude
        .iter()
        .fold(T::zero(), |a, &b| if b > a { b } else { a });
    let floor = T::from_f64(1e-12).unwrap() * max_amp;

    let mut undefined = Vec::new();
    let mut phase = Array1::zeros(n);
    for k in 0..n {
        if amplitude[k] <= floor {
            undefined.push(k);
            phase[k] = T::zero();
        } else {
            let z = analytic[k];
            phase[k] = wrap_phase(z.im().atan2(z.re()));
        }
    }

    let phase_unwrapped = unwrap_phase(phase.view());
    let shifted = graph.adjacency().dot(&phase_unwrapped);
    let freq_mod = &phase_unwrapped - &shifted;

    Ok(AnalyticFeatures {
        gfras: analytic,
        amplitude,
        phase,
        phase_unwrapped,
        freq_mod,
        alpha: cfg.alpha(),
        beta: cfg.beta(),
        undefined_phase: undefined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::eigendecompose;
    use crate::generate::GraphSpec;
    use crate::transforms::{FrftOperator, GftOperator};
    use ndarray::array;
    use std::f64::consts::{FRAC_PI_4, PI, TAU};
    use std::sync::Arc;

    fn config(alpha: f64, beta: f64) -> (HilbertConfig<f64>, crate::graph::Graph<f64>) {
        let g = GraphSpec::Social5.generate::<f64>(0).unwrap();
        let eig = Arc::new(eigendecompose(&g).unwrap());
        let gft = GftOperator::new(eig.clone());
        let frft = Arc::new(FrftOperator::new(&gft).unwrap());
        (HilbertConfig::new(alpha, beta, frft, eig).unwrap(), g)
    }

    #[test]
    fn zero_angle_doubles_into_diagonal() {
        // mask is identity at beta = 0, so gfras = x * (1 + i)
        let (cfg, g) = config(0.8, 0.0);
        let x = array![0.8, 0.3, 0.5, 0.2, 0.6];
        let feats = modulation_features(&cfg, &g, &x).unwrap();
        for k in 0..5 {
            assert!((feats.gfras[k].re - x[k]).abs() < 1e-9);
            assert!((feats.gfras[k].im - x[k]).abs() < 1e-9);
            assert!((feats.amplitude[k] - x[k] * 2.0f64.sqrt()).abs() < 1e-9);
            assert!((feats.phase[k] - FRAC_PI_4).abs() < 1e-9);
        }
        // constant phase: freq_mod = (I - A) * (pi/4 * ones)
        let ones = Array1::from_elem(5, FRAC_PI_4);
        let want = &ones - &g.adjacency().dot(&ones);
        for k in 0..5 {
            assert!((feats.freq_mod[k] - want[k]).abs() < 1e-8);
        }
    }

    #[test]
    fn zero_signal_flags_every_node() {
        let (cfg, g) = config(1.0, PI / 2.0);
        let x = Array1::zeros(5);
        let feats = modulation_features(&cfg, &g, &x).unwrap();
        assert_eq!(feats.undefined_phase, vec![0, 1, 2, 3, 4]);
        for k in 0..5 {
            assert_eq!(feats.amplitude[k], 0.0);
            assert_eq!(feats.phase[k], 0.0);
        }
    }

    #[test]
    fn pythagoras_is_exact() {
        let (cfg, g) = config(1.3, 0.9);
        let x = array![0.8, 0.3, 0.5, 0.2, 0.6];
        let feats = modulation_features(&cfg, &g, &x).unwrap();
        for k in 0..5 {
            let z = feats.gfras[k];
            let lhs = feats.amplitude[k] * feats.amplitude[k];
            let rhs = z.re * z.re + z.im * z.im;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }
    }

    #[test]
    fn unwrap_handles_forward_and_backward_jumps() {
        let phase = array![3.0, -3.0, 3.0, 2.0];
        let u = unwrap_phase(phase.view());
        assert_eq!(u[0], 3.0);
        assert!((u[1] - (-3.0 + TAU)).abs() < 1e-15);
        assert!((u[2] - 3.0).abs() < 1e-15); // jump back down cancels the turn
        assert!((u[3] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn unwrap_differs_by_exact_turns() {
        let (cfg, g) = config(0.6, 2.4);
        let x = array![0.8, -0.3, 0.5, -0.2, 0.6];
        let feats = modulation_features(&cfg, &g, &x).unwrap();
        for k in 0..5 {
            let turns = (feats.phase_unwrapped[k] - feats.phase[k]) / TAU;
            assert!((turns - turns.round()).abs() < 1e-9);
            // rewrapping by that exact multiple reproduces the phase
            let rewrapped = feats.phase_unwrapped[k] - TAU * turns.round();
            assert!((rewrapped - feats.phase[k]).abs() < 1e-12);
        }
    }
}
