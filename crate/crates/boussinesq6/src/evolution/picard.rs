//! Fixed-point iteration on the Duhamel integral equation
//!
//! ```text
//! u(t) = V_c(t) phi + V_s(t) psi_x + integral_0^t V_s(t-t') (u^2)_xx(t') dt'
//! ```
//!
//! sampled on equispaced time nodes, with the `t'` integral evaluated by
//! composite Simpson over the stored nodes (a 3/8 block closes odd
//! prefixes, and the very first node falls back to the trapezoid).

use num_complex::Complex64;

use super::nonlinearity::{nonlinearity_with, TorusFft};
use super::propagators::{vc_factor, vs_factor};
use super::{hermitian_defect, SolverConfig, TorusGrid, TorusState};
use crate::dispersion::{gamma, DispersionParams};
use crate::error::{Error, Result};
use crate::norms::hs_norm_torus;

/// Converged trajectory plus the iteration history that produced it.
#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub states: Vec<TorusState>,
    pub iterations: usize,
    /// Sup-over-time H^s distance between successive iterates, one entry per
    /// iteration.
    pub residuals: Vec<f64>,
}

/// Quadrature weights for `integral_0^{t_i}` over nodes `0..=i` at spacing `dt`.
fn duhamel_weights(i: usize, dt: f64) -> Vec<f64> {
    match i {
        0 => Vec::new(),
        1 => vec![dt / 2.0, dt / 2.0],
        _ => {
            let mut w = vec![0.0; i + 1];
            let simpson_end = if i % 2 == 0 { i } else { i - 3 };
            if simpson_end > 0 {
                w[0] += dt / 3.0;
                w[simpson_end] += dt / 3.0;
                for j in 1..simpson_end {
                    w[j] += if j % 2 == 1 { 4.0 * dt / 3.0 } else { 2.0 * dt / 3.0 };
                }
            }
            if i % 2 == 1 {
                // Simpson 3/8 closes the last three intervals
                let c = 3.0 * dt / 8.0;
                w[i - 3] += c;
                w[i - 2] += 3.0 * c;
                w[i - 1] += 3.0 * c;
                w[i] += c;
            }
            w
        }
    }
}

struct Engine {
    grid: TorusGrid,
    config: SolverConfig,
    fft: TorusFft,
    gammas: Vec<f64>,
    /// `cos(d dt gamma_k)`, `sin(d dt gamma_k)`, `sin(d dt gamma_k)/gamma_k`
    /// for node distances `d = 0..n_time_nodes`.
    cos_t: Vec<Vec<f64>>,
    sin_t: Vec<Vec<f64>>,
    vs_t: Vec<Vec<f64>>,
    weights: Vec<Vec<f64>>,
    phi: Vec<Complex64>,
    ixpsi: Vec<Complex64>,
    /// Linear part `V_c(t_i) phi + V_s(t_i) psi_x` per node.
    lin_u: Vec<Vec<Complex64>>,
    nonlinearity_on: bool,
}

impl Engine {
    fn new(
        phi_hat: &[Complex64],
        psi_hat: &[Complex64],
        grid: &TorusGrid,
        params: DispersionParams,
        config: &SolverConfig,
        nonlinearity_on: bool,
    ) -> Result<Self> {
        config.validate()?;
        let n_modes = grid.n_modes();
        if phi_hat.len() != n_modes || psi_hat.len() != n_modes {
            return Err(Error::invalid_argument("data length must equal n_modes"));
        }
        if hermitian_defect(phi_hat, grid) > 1e-8 || hermitian_defect(psi_hat, grid) > 1e-8 {
            return Err(Error::invalid_argument(
                "initial data must be Hermitian-symmetric (real u, u_t)",
            ));
        }
        let dt = config.dt();
        let n_nodes = config.n_time_nodes;
        let gammas: Vec<f64> = grid.xi_values().map(|xi| gamma(xi, params)).collect();
        let mut cos_t: Vec<Vec<f64>> = Vec::with_capacity(n_nodes);
        let mut sin_t: Vec<Vec<f64>> = Vec::with_capacity(n_nodes);
        let mut vs_t: Vec<Vec<f64>> = Vec::with_capacity(n_nodes);
        for d in 0..n_nodes {
            let t = d as f64 * dt;
            cos_t.push(gammas.iter().map(|&g| vc_factor(g, t)).collect());
            sin_t.push(gammas.iter().map(|&g| (t * g).sin()).collect());
            vs_t.push(gammas.iter().map(|&g| vs_factor(g, t)).collect());
        }
        let weights = (0..n_nodes).map(|i| duhamel_weights(i, dt)).collect();

        let ixpsi: Vec<Complex64> = grid
            .xi_values()
            .zip(psi_hat)
            .map(|(xi, &p)| Complex64::new(0.0, xi) * p)
            .collect();
        let lin_u = (0..n_nodes)
            .map(|i| {
                (0..n_modes)
                    .map(|k| phi_hat[k] * cos_t[i][k] + ixpsi[k] * vs_t[i][k])
                    .collect()
            })
            .collect();

        Ok(Self {
            grid: grid.clone(),
            config: config.clone(),
            fft: TorusFft::new(n_modes),
            gammas,
            cos_t,
            sin_t,
            vs_t,
            weights,
            phi: phi_hat.to_vec(),
            ixpsi,
            lin_u,
            nonlinearity_on,
        })
    }

    fn forcings(&self, u: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        u.iter()
            .map(|u_i| {
                if self.nonlinearity_on {
                    nonlinearity_with(&self.fft, u_i, &self.grid, self.config.dealias_fraction)
                } else {
                    vec![Complex64::default(); self.grid.n_modes()]
                }
            })
            .collect()
    }

    /// One application of the integral-equation right-hand side.
    fn apply(&self, u: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let forcings = self.forcings(u);
        let n_modes = self.grid.n_modes();
        (0..u.len())
            .map(|i| {
                let mut out = self.lin_u[i].clone();
                for (j, w) in self.weights[i].iter().enumerate() {
                    if *w == 0.0 {
                        continue;
                    }
                    let vs = &self.vs_t[i - j];
                    let f = &forcings[j];
                    for k in 0..n_modes {
                        out[k] += f[k] * (w * vs[k]);
                    }
                }
                out
            })
            .collect()
    }

    fn residual(&self, a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let diff: Vec<Complex64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
                hs_norm_torus(&diff, &self.grid, self.config.sobolev_s)
            })
            .fold(0.0, f64::max)
    }

    /// Assemble full states, deriving `v^ = du^/dt` from the converged
    /// trajectory (d/dt turns the sine family into the cosine family).
    fn states(&self, u: Vec<Vec<Complex64>>) -> Vec<TorusState> {
        let forcings = self.forcings(&u);
        let n_modes = self.grid.n_modes();
        let dt = self.config.dt();
        u.into_iter()
            .enumerate()
            .map(|(i, u_i)| {
                let mut v: Vec<Complex64> = (0..n_modes)
                    .map(|k| {
                        let g = self.gammas[k];
                        -self.phi[k] * (g * self.sin_t[i][k]) + self.ixpsi[k] * self.cos_t[i][k]
                    })
                    .collect();
                for (j, w) in self.weights[i].iter().enumerate() {
                    if *w == 0.0 {
                        continue;
                    }
                    let cs = &self.cos_t[i - j];
                    let f = &forcings[j];
                    for k in 0..n_modes {
                        v[k] += f[k] * (w * cs[k]);
                    }
                }
                TorusState::new(self.grid.clone(), u_i, v, i as f64 * dt).expect("sized arrays")
            })
            .collect()
    }
}

/// Solve the integral equation by Picard iteration.
pub fn picard_solve(
    phi_hat: &[Complex64],
    psi_hat: &[Complex64],
    grid: &TorusGrid,
    params: DispersionParams,
    config: &SolverConfig,
) -> Result<PicardSolution> {
    picard_solve_with_options(phi_hat, psi_hat, grid, params, config, true)
}

/// Variant with the nonlinearity switchable off (test hook: the fixed point
/// is then the closed-form linear evolution).
pub fn picard_solve_with_options(
    phi_hat: &[Complex64],
    psi_hat: &[Complex64],
    grid: &TorusGrid,
    params: DispersionParams,
    config: &SolverConfig,
    nonlinearity_on: bool,
) -> Result<PicardSolution> {
    let engine = Engine::new(phi_hat, psi_hat, grid, params, config, nonlinearity_on)?;
    let mut current = engine.lin_u.clone();
    let mut residuals = Vec::new();
    for iter in 1..=config.max_picard_iters {
        let next = engine.apply(&current);
        let res = engine.residual(&next, &current);
        residuals.push(res);
        current = next;
        if res < config.picard_tol {
            return Ok(PicardSolution {
                states: engine.states(current),
                iterations: iter,
                residuals,
            });
        }
    }
    let n = residuals.len();
    Err(Error::NoContraction {
        iters: config.max_picard_iters,
        previous: if n >= 2 { residuals[n - 2] } else { f64::NAN },
        last: residuals[n - 1],
    })
}

/// Apply the integral-equation right-hand side once to a given trajectory
/// (used to measure how well a trajectory satisfies the equation).
pub fn picard_apply_once(
    phi_hat: &[Complex64],
    psi_hat: &[Complex64],
    grid: &TorusGrid,
    params: DispersionParams,
    config: &SolverConfig,
    trajectory_u: &[Vec<Complex64>],
) -> Result<Vec<Vec<Complex64>>> {
    let engine = Engine::new(phi_hat, psi_hat, grid, params, config, true)?;
    if trajectory_u.len() != config.n_time_nodes {
        return Err(Error::invalid_argument(
            "trajectory length must equal n_time_nodes",
        ));
    }
    Ok(engine.apply(trajectory_u))
}
