//! Least-squares fits of `ln(error)` against grid size.

use serde::Serialize;

use crate::error::{domain, Result};

/// Errors at or below this are treated as rounding noise.
pub const NUMERICAL_FLOOR: f64 = 1e-13;

/// Fitted `ln(error) ~ slope * L + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorFitResult {
    pub points: Vec<(usize, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub fit_residual: f64,
    /// Every error is at the rounding floor, so the slope carries no information.
    pub floor_limited: bool,
}

/// Fit at least two `(L, error)` points. Zero errors are clamped to the
/// smallest positive double before taking logs.
pub fn fit_log_linear(points: &[(usize, f64)]) -> Result<ErrorFitResult> {
    if points.len() < 2 {
        return Err(domain(format!("need at least 2 points to fit, got {}", points.len())));
    }
    if points.iter().any(|p| p.1 < 0.0 || !p.1.is_finite()) {
        return Err(domain("errors must be finite and non-negative"));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0 as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.max(f64::MIN_POSITIVE).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(domain("all grid sizes are equal"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    Ok(ErrorFitResult {
        points: points.to_vec(),
        slope,
        intercept,
        fit_residual: (ss / k).sqrt(),
        floor_limited: points.iter().all(|p| p.1 <= NUMERICAL_FLOOR),
    })
}
