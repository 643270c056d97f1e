//! Ordinary least squares on `(ln N, ln k)`.

use super::{HarnessError, Model};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub model: Model,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub point_count: usize,
}

/// Fits `ln k = slope · ln N + intercept`.
///
/// Every `k` must be at least 1 and every `N` at least 2; callers filter out
/// `k = 0` points beforehand.
pub fn fit_loglog(model: Model, points: &[(u64, u64)]) -> Result<FitResult, HarnessError> {
    if points.len() < 2 {
        return Err(HarnessError::TooFewFitPoints(points.len()));
    }
    if let Some(&(n, k)) = points.iter().find(|(n, k)| *n < 2 || *k < 1) {
        return Err(HarnessError::UnfittablePoint { n, k });
    }
    let xs: Vec<f64> = points.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, k)| (*k as f64).ln()).collect();
    let count = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / count;
    let mean_y = ys.iter().sum::<f64>() / count;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(HarnessError::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        model,
        slope,
        intercept,
        r_squared,
        point_count: points.len(),
    })
}
