//! Cauchy-problem machinery on a large periodic torus.
//!
//! The real line is truncated to a torus of period `2L` large enough that the
//! data's localisation width fits ~40 times over; accepted runs are expected
//! to pass a period-doubling check.  States live in Fourier coefficient
//! space, FFT-ordered (`k = 0, 1, ..., n/2-1, -n/2, ..., -1`).

mod lipschitz;
mod nonlinearity;
mod oracle;
mod picard;
mod propagators;

pub use lipschitz::{lipschitz_probe, LipschitzReport};
pub use nonlinearity::{nonlinearity, nonlinearity_with, TorusFft};
pub use oracle::step_oracle_solve;
pub use picard::{picard_apply_once, picard_solve, picard_solve_with_options, PicardSolution};
pub use propagators::{apply_vc, apply_vs, linear_evolve, mode_energy, vc_factor, vs_factor};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Periodic spatial domain with `n_modes` retained Fourier modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusGrid {
    period: f64,
    n_modes: usize,
}

impl TorusGrid {
    pub fn new(period: f64, n_modes: usize) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::invalid_argument("period must be positive"));
        }
        if n_modes < 8 || n_modes % 2 != 0 {
            return Err(Error::invalid_argument(format!(
                "n_modes must be even and >= 8, got {n_modes}"
            )));
        }
        Ok(Self { period, n_modes })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Signed mode number of FFT bin `j`.
    pub fn mode_number(&self, j: usize) -> i64 {
        let n = self.n_modes as i64;
        let j = j as i64;
        if j < n / 2 {
            j
        } else {
            j - n
        }
    }

    /// Frequency `2 pi k / period` of FFT bin `j`.
    pub fn xi(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * self.mode_number(j) as f64 / self.period
    }

    pub fn xi_values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_modes).map(|j| self.xi(j))
    }

    /// FFT bin of the mode `-k` given the bin of `k`.
    pub fn conjugate_bin(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.n_modes - j
        }
    }
}

/// Mode coefficients of `u` and `u_t` at one time.
#[derive(Debug, Clone)]
pub struct TorusState {
    pub grid: TorusGrid,
    pub u_hat: Vec<Complex64>,
    pub v_hat: Vec<Complex64>,
    pub time: f64,
}

impl TorusState {
    pub fn new(grid: TorusGrid, u_hat: Vec<Complex64>, v_hat: Vec<Complex64>, time: f64) -> Result<Self> {
        if u_hat.len() != grid.n_modes() || v_hat.len() != grid.n_modes() {
            return Err(Error::invalid_argument(
                "coefficient arrays must have n_modes entries",
            ));
        }
        Ok(Self {
            grid,
            u_hat,
            v_hat,
            time,
        })
    }

    /// Worst relative deviation from conjugate symmetry over both arrays.
    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(&self.u_hat, &self.grid).max(hermitian_defect(&self.v_hat, &self.grid))
    }
}

/// Relative conjugate-symmetry defect of an FFT-ordered coefficient array.
pub fn hermitian_defect(coeffs: &[Complex64], grid: &TorusGrid) -> f64 {
    let scale = coeffs
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let mut worst = 0.0f64;
    for j in 0..coeffs.len() {
        let m = grid.conjugate_bin(j);
        let d = (coeffs[j] - coeffs[m].conj()).norm();
        worst = worst.max(d / scale);
    }
    worst
}

/// Solver parameters for [`picard_solve`] and the oracle stepper.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Final time of the trajectory.
    pub t_final: f64,
    /// Number of stored time nodes including both endpoints; odd values give
    /// pure composite-Simpson weights for the Duhamel integral.
    pub n_time_nodes: usize,
    /// Sup-over-time H^s distance between successive Picard iterates at which
    /// the iteration is declared converged.
    pub picard_tol: f64,
    pub max_picard_iters: usize,
    /// Fraction of the mode band kept when forming the quadratic term
    /// (2/3 rule by default).
    pub dealias_fraction: f64,
    /// Sobolev index used for convergence reporting.
    pub sobolev_s: f64,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0) {
            return Err(Error::invalid_argument("t_final must be positive"));
        }
        if self.n_time_nodes < 2 {
            return Err(Error::invalid_argument("need at least 2 time nodes"));
        }
        if !(self.picard_tol > 0.0) {
            return Err(Error::invalid_argument("picard_tol must be positive"));
        }
        if self.max_picard_iters < 1 {
            return Err(Error::invalid_argument("max_picard_iters must be >= 1"));
        }
        if !(self.dealias_fraction > 0.0 && self.dealias_fraction <= 1.0) {
            return Err(Error::invalid_argument("dealias_fraction must be in (0, 1]"));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.t_final / (self.n_time_nodes - 1) as f64
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            t_final: 0.5,
            n_time_nodes: 33,
            picard_tol: 1e-10,
            max_picard_iters: 25,
            dealias_fraction: 2.0 / 3.0,
            sobolev_s: 0.0,
        }
    }
}

/// Real, even mode profile `exp(-(xi/width)^2)`; Hermitian by construction.
pub fn mode_bump(grid: &TorusGrid, width: f64) -> Vec<Complex64> {
    let nyquist = grid.n_modes() / 2;
    (0..grid.n_modes())
        .map(|j| {
            if j == nyquist {
                Complex64::default()
            } else {
                let xi = grid.xi(j);
                Complex64::new((-(xi / width).powi(2)).exp(), 0.0)
            }
        })
        .collect()
}

/// Rescale coefficients so their torus `H^s` norm equals `target`.
pub fn normalize_hs(coeffs: &[Complex64], grid: &TorusGrid, s: f64, target: f64) -> Vec<Complex64> {
    let cur = crate::norms::hs_norm_torus(coeffs, grid, s);
    if cur == 0.0 {
        return coeffs.to_vec();
    }
    let f = target / cur;
    coeffs.iter().map(|v| v * f).collect()
}

/// Coefficients of `amplitude * cos(2 pi k x / period)`.
pub fn cosine_mode(grid: &TorusGrid, k: usize, amplitude: f64) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); grid.n_modes()];
    if k == 0 {
        out[0] = Complex64::new(amplitude, 0.0);
    } else {
        out[k] = Complex64::new(amplitude / 2.0, 0.0);
        out[grid.n_modes() - k] = Complex64::new(amplitude / 2.0, 0.0);
    }
    out
}
