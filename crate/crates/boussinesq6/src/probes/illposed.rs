//! The flow-map roughness experiment.
//!
//! Characteristic-function data at frequency `N`, fed through the quadratic
//! Duhamel term and evaluated at the short time `t = N^{-3-eps}`, produce an
//! `H^s` output of size `~ N^{-2s-6-2eps}`: for `s < -3` (and `eps` small
//! enough that the exponent is positive) the output grows with `N` although
//! the data stay bounded, so no quadratic estimate can close.  The sweep
//! measures that exponent.

use serde::{Deserialize, Serialize};

use super::fit::fit_loglog;
use super::kernel::kernel_k;
use super::ExperimentReport;
use crate::dispersion::{bracket, multiplier, DispersionParams};
use crate::error::{Error, Result};
use crate::spectral::{FrequencyGrid, SpectralField};

/// Parameters of a single evaluation at one `N`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IllposedSpec {
    pub n: f64,
    pub s: f64,
    pub epsilon: f64,
    pub params: DispersionParams,
    /// Spacing of the xi grids (both for the data norms and the xi1
    /// integral); 1/16 is plenty for indicator data of unit width.
    pub xi_resolution: f64,
    /// Number of t samples when taking the optional sup over a t-grid.
    pub t_quadrature_nodes: usize,
}

impl IllposedSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.n >= 4.0) {
            return Err(Error::invalid_spec("N must be >= 4"));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::invalid_spec("epsilon must be positive"));
        }
        if !(self.xi_resolution > 0.0 && self.xi_resolution <= 0.5) {
            return Err(Error::invalid_spec("xi_resolution must lie in (0, 1/2]"));
        }
        if self.t_quadrature_nodes < 3 {
            return Err(Error::invalid_spec("t_quadrature_nodes must be >= 3"));
        }
        Ok(())
    }

    /// The witness time `N^{-3-eps}`.
    pub fn witness_time(&self) -> f64 {
        self.n.powf(-3.0 - self.epsilon)
    }

    /// Growth exponent claimed for the quantity, `-2s - 6 - 2 eps`.
    pub fn predicted_exponent(&self) -> f64 {
        -2.0 * self.s - 6.0 - 2.0 * self.epsilon
    }
}

/// The data pair: `phi^ = N^{-s} chi_[-N, -N+1]`, `psi^ = N^{-s} chi_[N+1, N+2]`,
/// sampled on a symmetric grid covering `[-N-3, N+3]` with indicator edges on
/// lattice nodes (for integer `N`).
pub fn build_illposed_data(spec: &IllposedSpec) -> Result<(SpectralField, SpectralField)> {
    spec.validate()?;
    let n = spec.n;
    let per_unit = (1.0 / spec.xi_resolution).round().max(2.0);
    let spacing = 1.0 / per_unit;
    let half = n + 3.0;
    let n_nodes = 2 * (half * per_unit).round() as usize + 1;
    let grid = FrequencyGrid::new(-half, half, n_nodes)?;
    if grid.xi_min() > -(n + 1.0) || grid.xi_max() < n + 3.0 {
        return Err(Error::invalid_spec("grid does not cover the data supports"));
    }
    let amp = n.powf(-spec.s);
    let eps = 1e-9 * spacing;
    let phi = SpectralField::from_real_fn(grid.clone(), |xi| {
        if xi >= -n - eps && xi <= -n + 1.0 + eps {
            amp
        } else {
            0.0
        }
    })?;
    let psi = SpectralField::from_real_fn(grid, |xi| {
        if xi >= n + 1.0 - eps && xi <= n + 2.0 + eps {
            amp
        } else {
            0.0
        }
    })?;
    Ok((phi, psi))
}

/// The frequency interval `A_xi = { xi1 in supp psi^ : xi - xi1 in supp phi^ }`.
pub fn a_xi_interval(n: f64, xi: f64) -> Option<(f64, f64)> {
    let lo = (n + 1.0).max(xi + n - 1.0);
    let hi = (n + 2.0).min(xi + n);
    if hi > lo {
        Some((lo, hi))
    } else {
        None
    }
}

/// Length of `A_xi` (a unit tent over `xi in [1, 3]` peaking at `xi = 2`).
pub fn mes_a_xi(n: f64, xi: f64) -> f64 {
    a_xi_interval(n, xi).map_or(0.0, |(lo, hi)| hi - lo)
}

/// The probed quantity with explicit data amplitudes (the spectral shapes
/// stay the unit indicators; only the `N^{-s}` scalings vary).  Exposed so
/// the bilinearity of the quadratic term is directly testable.
pub fn illposed_quantity_with_amplitudes(
    spec: &IllposedSpec,
    amp_phi: f64,
    amp_psi: f64,
) -> Result<f64> {
    spec.validate()?;
    illposed_quantity_at_time(spec, spec.witness_time(), amp_phi, amp_psi)
}

fn illposed_quantity_at_time(
    spec: &IllposedSpec,
    t: f64,
    amp_phi: f64,
    amp_psi: f64,
) -> Result<f64> {
    let n = spec.n;
    let params = spec.params;
    // xi grid covering [1, 3]
    let per_unit = (1.0 / spec.xi_resolution).round().max(2.0) as usize;
    let n_xi = 2 * per_unit + 1;
    let dxi = 2.0 / (n_xi - 1) as f64;

    let inner_integral = |xi: f64| -> f64 {
        let Some((lo, hi)) = a_xi_interval(n, xi) else {
            return 0.0;
        };
        let m = ((hi - lo) / spec.xi_resolution).ceil().max(2.0) as usize;
        let h = (hi - lo) / m as f64;
        let mut sum = 0.0;
        for j in 0..=m {
            let xi1 = lo + j as f64 * h;
            let w = if j == 0 || j == m { 0.5 } else { 1.0 };
            sum += w * kernel_k(t, xi, xi1, xi - xi1, params);
        }
        sum * h
    };

    let mut acc = 0.0;
    for i in 0..n_xi {
        let xi = 1.0 + i as f64 * dxi;
        let f = multiplier(xi, params) / 8.0 * amp_phi * amp_psi * inner_integral(xi);
        let w = if i == 0 || i == n_xi - 1 { 0.5 } else { 1.0 };
        acc += w * bracket(xi).powf(2.0 * spec.s) * f * f;
    }
    Ok((acc * dxi).sqrt())
}

/// `H^s` size of the quadratic Duhamel term at the witness time for the
/// `N^{-s}`-scaled indicator data.
pub fn illposed_quantity(spec: &IllposedSpec) -> Result<f64> {
    let amp = spec.n.powf(-spec.s);
    illposed_quantity_with_amplitudes(spec, amp, amp)
}

/// Optional variant: maximise over a log-spaced t-grid around the witness
/// time (the proof only needs the witness itself).
pub fn illposed_quantity_sup_t(spec: &IllposedSpec) -> Result<(f64, f64)> {
    spec.validate()?;
    let amp = spec.n.powf(-spec.s);
    let t0 = spec.witness_time();
    let m = spec.t_quadrature_nodes;
    let mut best = (t0, 0.0f64);
    for i in 0..m {
        // t in [t0/8, 8 t0], logarithmic
        let f = -1.0 + 2.0 * i as f64 / (m - 1) as f64;
        let t = t0 * 8.0f64.powf(f);
        let q = illposed_quantity_at_time(spec, t, amp, amp)?;
        if q > best.1 {
            best = (t, q);
        }
    }
    Ok(best)
}

/// Per-`N` parameters shared across a sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IllposedSweepTemplate {
    pub s: f64,
    pub epsilon: f64,
    pub params: DispersionParams,
    pub xi_resolution: f64,
    pub t_quadrature_nodes: usize,
}

impl IllposedSweepTemplate {
    pub fn spec_for(&self, n: f64) -> IllposedSpec {
        IllposedSpec {
            n,
            s: self.s,
            epsilon: self.epsilon,
            params: self.params,
            xi_resolution: self.xi_resolution,
            t_quadrature_nodes: self.t_quadrature_nodes,
        }
    }
}

impl Default for IllposedSweepTemplate {
    fn default() -> Self {
        Self {
            s: -3.5,
            epsilon: 0.1,
            params: DispersionParams::plus(),
            xi_resolution: 1.0 / 16.0,
            t_quadrature_nodes: 9,
        }
    }
}

/// Fit the growth exponent of the quantity against `N`.  Passes when the
/// slope lands within 0.1 of `-2s - 6 - 2 eps`; when that prediction is not
/// positive the growth claim does not apply and the report is marked
/// informational.
pub fn illposed_sweep(template: &IllposedSweepTemplate, n_list: &[f64]) -> Result<ExperimentReport> {
    let mut points = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let spec = template.spec_for(n);
        points.push((n, illposed_quantity(&spec)?));
    }
    let (slope, _, residual) = fit_loglog(&points)?;
    let predicted = -2.0 * template.s - 6.0 - 2.0 * template.epsilon;
    Ok(ExperimentReport {
        points,
        fitted_slope: slope,
        fit_residual: residual,
        predicted_exponent: predicted,
        pass: (slope - predicted).abs() <= 0.1,
        reliable: residual <= 0.2,
        informational: predicted <= 0.0,
    })
}
