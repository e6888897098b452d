//! Exhaustive two-parameter grid search with a deterministic reduction.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outcome of a grid search: the maximizing pair, the full surface, and any
/// grid points whose objective came back NaN (recorded as -inf).
#[derive(Debug, Clone, Serialize)]
pub struct GridResult<T: Scalar> {
    pub alpha_star: T,
    pub beta_star: T,
    pub objective_star: T,
    /// Every evaluated (alpha, beta, objective) triple, row-major in the
    /// input grids.
    pub surface: Vec<(T, T, T)>,
    /// Grid points flagged because the objective was NaN.
    pub nan_points: Vec<(T, T)>,
}

/// Default fractional-order grid: 0.0, 0.1, ..., 2.0.
pub fn default_alpha_grid<T: Scalar>() -> Vec<T> {
    (0..=20)
        .map(|i| T::from_f64(i as f64 / 10.0).unwrap())
        .collect()
}

/// Default angle grid: p * pi/2 for p = 0.0, 0.1, ..., 2.0.
pub fn default_beta_grid<T: Scalar>() -> Vec<T> {
    (0..=20)
        .map(|i| T::from_f64(i as f64 / 10.0).unwrap() * T::FRAC_PI_2())
        .collect()
}

/// Evaluates the objective at every grid point (in parallel) and returns the
/// argmax. Ties break toward the smaller order, then the smaller angle, so
/// the result does not depend on evaluation order.
pub fn grid_search<T, F>(objective: F, alphas: &[T], betas: &[T]) -> Result<GridResult<T>>
where
    T: Scalar,
    F: Fn(T, T) -> T + Sync,
{
    if alphas.is_empty() || betas.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let points: Vec<(T, T)> = alphas
        .iter()
        .flat_map(|&a| betas.iter().map(move |&b| (a, b)))
        .collect();
    let values: Vec<T> = points.par_iter().map(|&(a, b)| objective(a, b)).collect();

    let mut surface = Vec::with_capacity(points.len());
    let mut nan_points = Vec::new();
    let mut best: Option<(T, T, T)> = None;
    for (&(a, b), &raw) in points.iter().zip(values.iter()) {
        let v = if raw.is_nan() {
            nan_points.push((a, b));
            T::neg_infinity()
        } else {
            raw
        };
        surface.push((a, b, v));
        let better = match best {
            None => true,
            Some((ba, bb, bv)) => v > bv || (v == bv && (a < ba || (a == ba && b < bb))),
        };
        if better {
            best = Some((a, b, v));
        }
    }
    let (alpha_star, beta_star, objective_star) = best.unwrap();
    Ok(GridResult {
        alpha_star,
        beta_star,
        objective_star,
        surface,
        nan_points,
    })
}
