//! Forward/inverse DFT pair in the `e^{-i x xi}` convention.
//!
//! For `n` samples of `g` at `x_j = j * period / n`,
//! `g^(xi_k) = dx * sum_j e^{-i x_j xi_k} g_j` with `xi_k = 2 pi k / period`,
//! and the inverse carries the `1/(2 pi)` so the round trip is the identity.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::field::SpectralField;
use super::grid::FrequencyGrid;
use crate::error::{Error, Result};

/// Forward transform of equispaced samples over one period.
pub fn dft_forward(samples: &[Complex64], period: f64) -> Result<SpectralField> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::invalid_argument("dft needs at least 2 samples"));
    }
    if !(period > 0.0) || !period.is_finite() {
        return Err(Error::invalid_argument("period must be positive and finite"));
    }
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let dx = period / n as f64;
    let d_xi = 2.0 * std::f64::consts::PI / period;
    let k_min = -((n as i64) / 2);
    let grid = FrequencyGrid::new(
        k_min as f64 * d_xi,
        (k_min + n as i64 - 1) as f64 * d_xi,
        n,
    )?;
    let values = (0..n)
        .map(|i| buf[(k_min + i as i64).rem_euclid(n as i64) as usize] * dx)
        .collect();
    SpectralField::new(grid, values)
}

/// Inverse transform back to `n_points` equispaced samples.
///
/// `n_points` must equal the field's node count (the pair is square).
pub fn dft_inverse(field: &SpectralField, n_points: usize) -> Result<Vec<Complex64>> {
    let n = field.grid().n_nodes();
    if n_points != n {
        return Err(Error::invalid_argument(format!(
            "n_points {n_points} does not match field size {n}"
        )));
    }
    let d_xi = field.grid().spacing();
    let period = 2.0 * std::f64::consts::PI / d_xi;
    let k_min = -((n as i64) / 2);

    let mut buf = vec![Complex64::default(); n];
    for i in 0..n {
        buf[(k_min + i as i64).rem_euclid(n as i64) as usize] = field.value(i);
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    for v in &mut buf {
        *v /= period;
    }
    Ok(buf)
}
