//! The cosine and sine families of the free evolution.
//!
//! Per mode the linear flow is a harmonic oscillator with frequency
//! `gamma(xi)`: `V_c(t)` multiplies by `cos(t gamma)` and `V_s(t)` by
//! `sin(t gamma)/gamma`, with the removable singularity at `gamma = 0`
//! filled by the limit value `t`.

use num_complex::Complex64;

use super::{TorusGrid, TorusState};
use crate::dispersion::{gamma, DispersionParams};
use crate::error::Result;

pub fn vc_factor(gamma_xi: f64, t: f64) -> f64 {
    (t * gamma_xi).cos()
}

/// `sin(t gamma)/gamma`, continuous through `gamma = 0` where it equals `t`.
pub fn vs_factor(gamma_xi: f64, t: f64) -> f64 {
    let x = t * gamma_xi;
    if x.abs() < 1e-8 {
        t * (1.0 - x * x / 6.0)
    } else {
        x.sin() / gamma_xi
    }
}

/// Multiply mode coefficients by `cos(t gamma(xi_k))`.
pub fn apply_vc(
    coeffs: &[Complex64],
    t: f64,
    grid: &TorusGrid,
    params: DispersionParams,
) -> Vec<Complex64> {
    grid.xi_values()
        .zip(coeffs)
        .map(|(xi, &c)| c * vc_factor(gamma(xi, params), t))
        .collect()
}

/// Multiply mode coefficients by `sin(t gamma(xi_k))/gamma(xi_k)`.
pub fn apply_vs(
    coeffs: &[Complex64],
    t: f64,
    grid: &TorusGrid,
    params: DispersionParams,
) -> Vec<Complex64> {
    grid.xi_values()
        .zip(coeffs)
        .map(|(xi, &c)| c * vs_factor(gamma(xi, params), t))
        .collect()
}

/// Closed-form linear evolution from data `(phi, psi)`, where the initial
/// velocity is `psi_x` (the solver forms `i xi psi^` itself).
///
/// Per mode, with `w = i xi psi^`:
/// `u^(t) = cos(t g) phi^ + (sin(t g)/g) w`,
/// `v^(t) = -g sin(t g) phi^ + cos(t g) w`,
/// so the mode energy `|v^|^2 + g^2 |u^|^2` is constant in t.
pub fn linear_evolve(
    phi_hat: &[Complex64],
    psi_hat: &[Complex64],
    t: f64,
    grid: &TorusGrid,
    params: DispersionParams,
) -> Result<TorusState> {
    let n = grid.n_modes();
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for (j, xi) in grid.xi_values().enumerate() {
        let g = gamma(xi, params);
        let w = Complex64::new(0.0, xi) * psi_hat[j];
        let (c, s) = (vc_factor(g, t), vs_factor(g, t));
        u.push(phi_hat[j] * c + w * s);
        v.push(-phi_hat[j] * (g * (t * g).sin()) + w * c);
    }
    TorusState::new(grid.clone(), u, v, t)
}

/// Per-mode energy `|v^|^2 + gamma^2 |u^|^2` of a state.
pub fn mode_energy(state: &TorusState, params: DispersionParams) -> Vec<f64> {
    state
        .grid
        .xi_values()
        .enumerate()
        .map(|(j, xi)| {
            let g = gamma(xi, params);
            state.v_hat[j].norm_sqr() + g * g * state.u_hat[j].norm_sqr()
        })
        .collect()
}
