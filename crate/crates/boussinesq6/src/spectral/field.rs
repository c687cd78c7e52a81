//! Complex-valued fields on frequency grids.

use num_complex::Complex64;

use super::grid::{FrequencyGrid, SpaceTimeGrid};
use crate::error::{Error, Result};

/// Samples of a complex function on a [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::invalid_argument(format!(
                "value count {} does not match grid nodes {}",
                values.len(),
                grid.n_nodes()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::invalid_argument("field contains non-finite entries"));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: FrequencyGrid) -> Self {
        let n = grid.n_nodes();
        Self {
            grid,
            values: vec![Complex64::default(); n],
        }
    }

    pub fn from_fn(grid: FrequencyGrid, f: impl FnMut(f64) -> Complex64) -> Result<Self> {
        let values = grid.nodes().map(f).collect();
        Self::new(grid, values)
    }

    pub fn from_real_fn(grid: FrequencyGrid, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid, |xi| Complex64::new(f(xi), 0.0))
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, k: usize) -> Complex64 {
        self.values[k]
    }

    /// Largest deviation from `f(-xi) = conj(f(xi))`, relative to the field's
    /// sup norm.  Meaningful for fields that are transforms of real
    /// functions; requires a symmetric grid.
    pub fn hermitian_defect(&self) -> f64 {
        let scale = self
            .values
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        let mut worst = 0.0f64;
        for k in 0..self.values.len() {
            if let Some(m) = self.grid.mirror_index(k) {
                let d = (self.values[k] - self.values[m].conj()).norm();
                worst = worst.max(d / scale);
            }
        }
        worst
    }

    pub fn is_real_origin(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    pub fn map(&self, mut f: impl FnMut(f64, Complex64) -> Complex64) -> Self {
        let values = self
            .grid
            .nodes()
            .zip(&self.values)
            .map(|(xi, &v)| f(xi, v))
            .collect();
        Self {
            grid: self.grid.clone(),
            values,
        }
    }
}

/// Samples of a complex function of `(tau, xi)` on a [`SpaceTimeGrid`].
///
/// Values are stored row-major: `values[it * n_xi + ix]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    grid: SpaceTimeGrid,
    values: Vec<Complex64>,
}

impl SpaceTimeField {
    pub fn new(grid: SpaceTimeGrid, values: Vec<Complex64>) -> Result<Self> {
        let want = grid.tau_axis.n_nodes() * grid.xi_axis.n_nodes();
        if values.len() != want {
            return Err(Error::invalid_argument(format!(
                "value count {} does not match grid size {}x{}",
                values.len(),
                grid.tau_axis.n_nodes(),
                grid.xi_axis.n_nodes()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::invalid_argument("field contains non-finite entries"));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: SpaceTimeGrid) -> Self {
        let n = grid.tau_axis.n_nodes() * grid.xi_axis.n_nodes();
        Self {
            grid,
            values: vec![Complex64::default(); n],
        }
    }

    pub fn from_fn(grid: SpaceTimeGrid, mut f: impl FnMut(f64, f64) -> Complex64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.tau_axis.n_nodes() * grid.xi_axis.n_nodes());
        for it in 0..grid.tau_axis.n_nodes() {
            let tau = grid.tau_axis.node(it);
            for ix in 0..grid.xi_axis.n_nodes() {
                values.push(f(tau, grid.xi_axis.node(ix)));
            }
        }
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }

    pub fn n_tau(&self) -> usize {
        self.grid.tau_axis.n_nodes()
    }

    pub fn n_xi(&self) -> usize {
        self.grid.xi_axis.n_nodes()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, it: usize, ix: usize) -> Complex64 {
        self.values[it * self.n_xi() + ix]
    }

    pub(crate) fn at_mut(&mut self, it: usize, ix: usize) -> &mut Complex64 {
        let n_xi = self.n_xi();
        &mut self.values[it * n_xi + ix]
    }

    pub fn map(&self, mut f: impl FnMut(f64, f64, Complex64) -> Complex64) -> Self {
        let mut out = self.clone();
        for it in 0..self.n_tau() {
            let tau = self.grid.tau_axis.node(it);
            for ix in 0..self.n_xi() {
                let xi = self.grid.xi_axis.node(ix);
                *out.at_mut(it, ix) = f(tau, xi, self.at(it, ix));
            }
        }
        out
    }
}
