//! Quantitative metrics for the anomaly-localization and edge-detection
//! studies.

use ndarray::Array2;
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Aggregate metric record; fields are filled per experiment context.
#[derive(Debug, Clone, Default, Serialize)]
pub struct MetricReport<T: Scalar> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snr_db: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_at_k: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rmse: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ssim: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_density: Option<T>,
}

/// Signal-to-noise ratio in dB: mean response magnitude over the true
/// anomaly nodes against the population standard deviation of the
/// background responses.
pub fn snr_db<T: Scalar>(magnitudes: &[T], truth: &[usize]) -> Result<T> {
    let n = magnitudes.len();
    if truth.is_empty() || truth.len() >= n || truth.iter().any(|&i| i >= n) {
        return Err(Error::DegenerateBackground);
    }
    let is_truth = {
        let mut mask = vec![false; n];
        for &i in truth {
            mask[i] = true;
        }
        mask
    };
    let mut mu = T::zero();
    for &i in truth {
        mu += magnitudes[i];
    }
    mu /= T::from_usize(truth.len()).unwrap();

    let background: Vec<T> = magnitudes
        .iter()
        .enumerate()
        .filter(|(i, _)| !is_truth[*i])
        .map(|(_, &v)| v)
        .collect();
    let m = T::from_usize(background.len()).unwrap();
    let mean_bg = background.iter().fold(T::zero(), |a, &b| a + b) / m;
    let var = background
        .iter()
        .map(|&v| (v - mean_bg) * (v - mean_bg))
        .fold(T::zero(), |a, b| a + b)
        / m;
    let sigma = Float::sqrt(var);
    if sigma <= T::zero() {
        return Err(Error::DegenerateBackground);
    }
    let twenty = T::from_f64(20.0).unwrap();
    Ok(twenty * Float::log10(mu / sigma))
}

/// Fraction of the k largest-magnitude nodes that are true anomalies.
/// Magnitude ties rank by ascending node index.
pub fn precision_at_k<T: Scalar>(magnitudes: &[T], truth: &[usize], k: usize) -> Result<T> {
    let n = magnitudes.len();
    if k == 0 || k > n {
        return Err(Error::KTooLarge { k, n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        magnitudes[b]
            .partial_cmp(&magnitudes[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut is_truth = vec![false; n];
    for &i in truth {
        if i < n {
            is_truth[i] = true;
        }
    }
    let hits = order.iter().take(k).filter(|&&i| is_truth[i]).count();
    Ok(T::from_usize(hits).unwrap() / T::from_usize(k).unwrap())
}

/// Root mean squared error between two equal-length vectors.
pub fn rmse<T: Scalar>(y: &[T], g: &[T]) -> Result<T> {
    if y.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            got: y.len(),
        });
    }
    let n = T::from_usize(y.len()).unwrap();
    let acc = y
        .iter()
        .zip(g.iter())
        .map(|(&a, &b)| (a - b) * (a - b))
        .fold(T::zero(), |s, v| s + v);
    Ok(Float::sqrt(acc / n))
}

/// Edge-map quality metrics.
#[derive(Debug, Clone, Serialize)]
pub struct ImageMetrics<T: Scalar> {
    /// Shannon entropy of the 256-bin intensity histogram, normalized by
    /// log2(256) into [0, 1].
    pub entropy: T,
    /// Mean structural similarity against the reference, 8x8 Gaussian
    /// window (sigma 1.5), stabilizers (0.01)^2 and (0.03)^2 on the unit
    /// dynamic range.
    pub ssim: T,
    /// Fraction of pixels above the Otsu threshold of the map itself.
    pub edge_density: T,
}

const BINS: usize = 256;

fn bin_index<T: Scalar>(v: T) -> usize {
    let b = (v.to_f64().unwrap_or(0.0) * BINS as f64).floor() as i64;
    b.clamp(0, BINS as i64 - 1) as usize
}

fn histogram<T: Scalar>(img: &Array2<T>) -> [usize; BINS] {
    let mut h = [0usize; BINS];
    for &v in img.iter() {
        h[bin_index(v)] += 1;
    }
    h
}

fn shannon_entropy_normalized<T: Scalar>(hist: &[usize; BINS], total: usize) -> T {
    let mut e = 0.0f64;
    for &c in hist.iter() {
        if c > 0 {
            let p = c as f64 / total as f64;
            e -= p * p.log2();
        }
    }
    T::from_f64(e / (BINS as f64).log2()).unwrap()
}

/// Otsu threshold bin: maximizes between-class variance, ties to the
/// smallest bin.
fn otsu_bin(hist: &[usize; BINS], total: usize) -> usize {
    let total_f = total as f64;
    let mut cum_mean = 0.0;
    for (b, &c) in hist.iter().enumerate() {
        cum_mean += b as f64 * c as f64 / total_f;
    }
    let mut best_t = 0;
    let mut best_var = f64::NEG_INFINITY;
    let (mut w0, mut m0) = (0.0f64, 0.0f64);
    for (t, &count) in hist.iter().enumerate() {
        w0 += count as f64 / total_f;
        m0 += t as f64 * count as f64 / total_f;
        let w1 = 1.0 - w0;
        if w0 <= 0.0 || w1 <= 0.0 {
            continue;
        }
        let mu0 = m0 / w0;
        let mu1 = (cum_mean - m0) / w1;
        let var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if var > best_var {
            best_var = var;
            best_t = t;
        }
    }
    best_t
}

/// SSIM with an 8x8 Gaussian window, sigma 1.5, over all valid positions.
fn mean_ssim<T: Scalar>(x: &Array2<T>, y: &Array2<T>) -> T {
    const W: usize = 8;
    let (rows, cols) = x.dim();
    let mut weights = [[0.0f64; W]; W];
    let sigma = 1.5f64;
    let center = (W as f64 - 1.0) / 2.0;
    let mut wsum = 0.0;
    for (i, row) in weights.iter_mut().enumerate() {
        for (j, w) in row.iter_mut().enumerate() {
            let d2 = (i as f64 - center).powi(2) + (j as f64 - center).powi(2);
            *w = (-d2 / (2.0 * sigma * sigma)).exp();
            wsum += *w;
        }
    }
    for row in weights.iter_mut() {
        for w in row.iter_mut() {
            *w /= wsum;
        }
    }

    let c1 = 0.01f64 * 0.01;
    let c2 = 0.03f64 * 0.03;
    let mut acc = 0.0f64;
    let mut count = 0usize;
    for r in 0..=(rows - W) {
        for c in 0..=(cols - W) {
            let (mut mx, mut my, mut mxx, mut myy, mut mxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for i in 0..W {
                for j in 0..W {
                    let w = weights[i][j];
                    let a = x[(r + i, c + j)].to_f64().unwrap_or(0.0);
                    let b = y[(r + i, c + j)].to_f64().unwrap_or(0.0);
                    mx += w * a;
                    my += w * b;
                    mxx += w * a * a;
                    myy += w * b * b;
                    mxy += w * a * b;
                }
            }
            let (vx, vy, cov) = (mxx - mx * mx, myy - my * my, mxy - mx * my);
            let ssim = ((2.0 * mx * my + c1) * (2.0 * cov + c2))
                / ((mx * mx + my * my + c1) * (vx + vy + c2));
            acc += ssim;
            count += 1;
        }
    }
    T::from_f64(acc / count as f64).unwrap()
}

/// Computes entropy / SSIM / edge density for an edge map against a
/// reference image. Both must share the same shape, at least 8x8, with
/// values already min-max normalized into [0, 1].
pub fn image_metrics<T: Scalar>(
    edge_map: &Array2<T>,
    reference: &Array2<T>,
) -> Result<ImageMetrics<T>> {
    if edge_map.dim() != reference.dim() {
        return Err(Error::ShapeMismatch {
            expected: reference.dim(),
            got: edge_map.dim(),
        });
    }
    let (rows, cols) = edge_map.dim();
    if rows < 8 || cols < 8 {
        return Err(Error::ShapeMismatch {
            expected: (8, 8),
            got: (rows, cols),
        });
    }
    let total = rows * cols;
    let hist = histogram(edge_map);
    let entropy = shannon_entropy_normalized::<T>(&hist, total);
    let ssim = mean_ssim(edge_map, reference);
    let threshold = otsu_bin(&hist, total);
    let above = edge_map
        .iter()
        .filter(|&&v| bin_index(v) > threshold)
        .count();
    let edge_density = T::from_usize(above).unwrap() / T::from_usize(total).unwrap();
    Ok(ImageMetrics {
        entropy,
        ssim,
        edge_density,
    })
}
