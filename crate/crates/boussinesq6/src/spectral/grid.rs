//! Uniform frequency grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniform sampling of a frequency interval.
///
/// Nodes are exactly `xi_min + k * spacing` for `k = 0..n_nodes`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    xi_min: f64,
    xi_max: f64,
    n_nodes: usize,
    spacing: f64,
}

impl FrequencyGrid {
    pub fn new(xi_min: f64, xi_max: f64, n_nodes: usize) -> Result<Self> {
        if n_nodes < 2 {
            return Err(Error::invalid_argument(format!(
                "grid needs at least 2 nodes, got {n_nodes}"
            )));
        }
        if !(xi_max > xi_min) || !xi_min.is_finite() || !xi_max.is_finite() {
            return Err(Error::invalid_argument(format!(
                "grid interval [{xi_min}, {xi_max}] is not a finite positive-length interval"
            )));
        }
        let spacing = (xi_max - xi_min) / (n_nodes - 1) as f64;
        Ok(Self {
            xi_min,
            xi_max,
            n_nodes,
            spacing,
        })
    }

    pub fn xi_min(&self) -> f64 {
        self.xi_min
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn node(&self, k: usize) -> f64 {
        debug_assert!(k < self.n_nodes);
        self.xi_min + k as f64 * self.spacing
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_nodes).map(|k| self.node(k))
    }

    /// True when `xi_min = -xi_max` and a node sits exactly at 0.
    pub fn is_symmetric(&self) -> bool {
        let scale = self.xi_max.abs().max(1.0);
        (self.xi_min + self.xi_max).abs() <= 1e-12 * scale && self.index_of_zero().is_some()
    }

    /// Index of the node at the origin, when the origin lies on the lattice.
    pub fn index_of_zero(&self) -> Option<usize> {
        let q = -self.xi_min / self.spacing;
        let k = q.round();
        if (q - k).abs() <= 1e-9 && k >= 0.0 && (k as usize) < self.n_nodes {
            Some(k as usize)
        } else {
            None
        }
    }

    /// Index of the mirror node `-xi` of node `k`, for symmetric grids.
    pub fn mirror_index(&self, k: usize) -> Option<usize> {
        let z = self.index_of_zero()?;
        let m = 2 * z;
        if k <= m && m - k < self.n_nodes {
            Some(m - k)
        } else {
            None
        }
    }
}

/// Symmetric grid on `[-half_width, half_width]` with a node at 0.
///
/// `n_nodes` must be odd so the origin falls on the lattice.
pub fn make_symmetric_grid(half_width: f64, n_nodes: usize) -> Result<FrequencyGrid> {
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(Error::invalid_argument(format!(
            "half_width must be positive and finite, got {half_width}"
        )));
    }
    if n_nodes < 3 || n_nodes % 2 == 0 {
        return Err(Error::invalid_argument(format!(
            "n_nodes must be odd and >= 3, got {n_nodes}"
        )));
    }
    FrequencyGrid::new(-half_width, half_width, n_nodes)
}

/// Product grid for space-time fields `(tau, xi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeGrid {
    pub tau_axis: FrequencyGrid,
    pub xi_axis: FrequencyGrid,
}

impl SpaceTimeGrid {
    pub fn new(tau_axis: FrequencyGrid, xi_axis: FrequencyGrid) -> Self {
        Self { tau_axis, xi_axis }
    }
}
