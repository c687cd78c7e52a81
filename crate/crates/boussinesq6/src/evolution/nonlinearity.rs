//! The quadratic term `(u^2)_xx` in mode space.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{TorusGrid, TorusState};

/// Cached transform pair for one mode count.
pub struct TorusFft {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    n: usize,
}

impl TorusFft {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            n,
        }
    }

    /// Coefficients -> grid samples (unnormalised inverse transform).
    pub fn to_space(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut buf = coeffs.to_vec();
        self.inverse.process(&mut buf);
        buf
    }

    /// Grid samples -> coefficients (forward transform / n).
    pub fn to_coeffs(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut buf = samples.to_vec();
        self.forward.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        for v in &mut buf {
            *v *= scale;
        }
        buf
    }
}

/// `(u^2)_xx` in coefficients: square on the spatial grid, transform back,
/// multiply by `-xi^2`, and zero every mode with `|k| > dealias_fraction * n/2`.
pub fn nonlinearity_with(
    fft: &TorusFft,
    u_hat: &[Complex64],
    grid: &TorusGrid,
    dealias_fraction: f64,
) -> Vec<Complex64> {
    let u = fft.to_space(u_hat);
    let sq: Vec<Complex64> = u.iter().map(|&x| x * x).collect();
    let mut w = fft.to_coeffs(&sq);
    let cutoff = dealias_fraction * grid.n_modes() as f64 / 2.0;
    for (j, v) in w.iter_mut().enumerate() {
        let k = grid.mode_number(j);
        if (k.abs() as f64) > cutoff {
            *v = Complex64::default();
        } else {
            let xi = grid.xi(j);
            *v *= -xi * xi;
        }
    }
    w
}

/// One-shot variant working from a full state.
pub fn nonlinearity(state: &TorusState, dealias_fraction: f64) -> Vec<Complex64> {
    let fft = TorusFft::new(state.grid.n_modes());
    nonlinearity_with(&fft, &state.u_hat, &state.grid, dealias_fraction)
}
