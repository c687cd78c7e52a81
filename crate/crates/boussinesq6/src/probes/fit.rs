//! Log-log slope fitting for growth-exponent sweeps.

use crate::error::{Error, Result};

/// Unweighted least squares on `(log N, log value)`.
///
/// Returns `(slope, intercept, rms_residual)`; needs at least 3 points with
/// strictly positive coordinates.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    if points.len() < 3 {
        return Err(Error::invalid_argument(
            "slope fit needs at least 3 points",
        ));
    }
    if points.iter().any(|&(n, v)| !(n > 0.0) || !(v > 0.0)) {
        return Err(Error::invalid_argument(
            "slope fit needs positive abscissae and values",
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, v)| (n.ln(), v.ln())).collect();
    let m = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    if denom.abs() < 1e-12 * sxx.max(1.0) {
        return Err(Error::invalid_argument("degenerate abscissae in slope fit"));
    }
    let slope = (m * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / m;
    let ss: f64 = logs
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Ok((slope, intercept, (ss / m).sqrt()))
}
