//! Independent verification path: a Lawson (integrating-factor) RK4 stepper
//! for the per-mode second-order system `u^_tt = -gamma^2 u^ - xi^2 (u^2)^`.
//!
//! The linear rotation is applied exactly per substep, so stiffness from the
//! sixth-order symbol costs nothing; the nonlinear remainder is integrated at
//! classical fourth order.  Used as a cross-check oracle for the Picard
//! solver, never as the primary path.

use num_complex::Complex64;

use super::nonlinearity::{nonlinearity_with, TorusFft};
use super::propagators::vs_factor;
use super::{hermitian_defect, SolverConfig, TorusGrid, TorusState};
use crate::dispersion::{gamma, DispersionParams};
use crate::error::{Error, Result};

const INSTABILITY_FACTOR: f64 = 1e10;

/// Exact linear half/full-step rotation factors per mode.
struct Rotation {
    cos: Vec<f64>,
    /// sin(h gamma)/gamma, the well-conditioned off-diagonal entry
    vs: Vec<f64>,
    gamma_sq: Vec<f64>,
}

impl Rotation {
    fn new(gammas: &[f64], h: f64) -> Self {
        Self {
            cos: gammas.iter().map(|&g| (h * g).cos()).collect(),
            vs: gammas.iter().map(|&g| vs_factor(g, h)).collect(),
            gamma_sq: gammas.iter().map(|&g| g * g).collect(),
        }
    }

    fn apply(&self, u: &[Complex64], v: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut nu = Vec::with_capacity(u.len());
        let mut nv = Vec::with_capacity(u.len());
        for k in 0..u.len() {
            nu.push(u[k] * self.cos[k] + v[k] * self.vs[k]);
            nv.push(-u[k] * (self.gamma_sq[k] * self.vs[k]) + v[k] * self.cos[k]);
        }
        (nu, nv)
    }
}

fn axpy(
    a: f64,
    x: &(Vec<Complex64>, Vec<Complex64>),
    y: &(Vec<Complex64>, Vec<Complex64>),
) -> (Vec<Complex64>, Vec<Complex64>) {
    (
        y.0.iter().zip(&x.0).map(|(p, q)| p + q * a).collect(),
        y.1.iter().zip(&x.1).map(|(p, q)| p + q * a).collect(),
    )
}

/// Evolve `(phi, psi_x)` data to the same time nodes the Picard solver uses,
/// taking `substeps` Lawson-RK4 steps per node interval.
pub fn step_oracle_solve(
    phi_hat: &[Complex64],
    psi_hat: &[Complex64],
    grid: &TorusGrid,
    params: DispersionParams,
    config: &SolverConfig,
    substeps: usize,
) -> Result<Vec<TorusState>> {
    config.validate()?;
    if substeps == 0 {
        return Err(Error::invalid_argument("substeps must be >= 1"));
    }
    let n = grid.n_modes();
    if phi_hat.len() != n || psi_hat.len() != n {
        return Err(Error::invalid_argument("data length must equal n_modes"));
    }
    if hermitian_defect(phi_hat, grid) > 1e-8 || hermitian_defect(psi_hat, grid) > 1e-8 {
        return Err(Error::invalid_argument(
            "initial data must be Hermitian-symmetric",
        ));
    }

    let fft = TorusFft::new(n);
    let gammas: Vec<f64> = grid.xi_values().map(|xi| gamma(xi, params)).collect();
    let h = config.dt() / substeps as f64;
    let full = Rotation::new(&gammas, h);
    let half = Rotation::new(&gammas, h / 2.0);

    let forcing = |u_hat: &[Complex64]| -> (Vec<Complex64>, Vec<Complex64>) {
        (
            vec![Complex64::default(); n],
            nonlinearity_with(&fft, u_hat, grid, config.dealias_fraction),
        )
    };

    let mut u: Vec<Complex64> = phi_hat.to_vec();
    let mut v: Vec<Complex64> = grid
        .xi_values()
        .zip(psi_hat)
        .map(|(xi, &p)| Complex64::new(0.0, xi) * p)
        .collect();

    let norm_scale = u.iter().chain(v.iter()).map(|x| x.norm()).fold(0.0, f64::max) + 1.0;

    let mut out = Vec::with_capacity(config.n_time_nodes);
    out.push(TorusState::new(grid.clone(), u.clone(), v.clone(), 0.0)?);

    for node in 1..config.n_time_nodes {
        for sub in 0..substeps {
            let state = (u, v);
            let k1 = forcing(&state.0);
            let half_state = half.apply(&state.0, &state.1);

            let (a_u, a_v) = axpy(h / 2.0, &k1, &state);
            let arg2 = half.apply(&a_u, &a_v);
            let k2 = forcing(&arg2.0);

            let arg3 = axpy(h / 2.0, &k2, &half_state);
            let k3 = forcing(&arg3.0);

            let full_state = full.apply(&state.0, &state.1);
            let half_k3 = half.apply(&k3.0, &k3.1);
            let arg4 = axpy(h, &half_k3, &full_state);
            let k4 = forcing(&arg4.0);

            // U' = E1 U + h/6 (E1 k1 + 2 E1/2 k2 + 2 E1/2 k3 + k4)
            let e1_k1 = full.apply(&k1.0, &k1.1);
            let eh_k2 = half.apply(&k2.0, &k2.1);
            let mut next = full_state;
            next = axpy(h / 6.0, &e1_k1, &next);
            next = axpy(h / 3.0, &eh_k2, &next);
            next = axpy(h / 3.0, &half_k3, &next);
            next = axpy(h / 6.0, &k4, &next);
            u = next.0;
            v = next.1;

            let worst = u.iter().map(|x| x.norm()).fold(0.0, f64::max);
            if !worst.is_finite() || worst > INSTABILITY_FACTOR * norm_scale {
                let t = (node - 1) as f64 * config.dt() + (sub + 1) as f64 * h;
                return Err(Error::Instability { t, norm: worst });
            }
        }
        out.push(TorusState::new(
            grid.clone(),
            u.clone(),
            v.clone(),
            node as f64 * config.dt(),
        )?);
    }
    Ok(out)
}
