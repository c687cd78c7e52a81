//! Thin-support space-time fields for the counterexample experiments.
//!
//! The indicator data of the bilinear probe live on slanted strips
//! `{ N <= xi <= N + N^{-alpha}, |tau - rho(xi)| <= 1 }` whose tau-location
//! travels by about `3 N^{2-alpha}` across a xi-width of `N^{-alpha}`.  A
//! dense `(tau, xi)` matrix covering both strips and their convolution at the
//! mandated resolutions would need on the order of 1e12 entries at `N = 256`,
//! so fields are stored column-wise as piecewise-linear functions of tau with
//! explicit support.  Convolution is evaluated exactly on the
//! piecewise-linear model: per column pair the product is piecewise
//! quadratic, which Simpson integrates without error, so the only
//! approximation anywhere is the PL sampling of smooth weight factors.

use crate::dispersion::DispersionParams;
use crate::error::{Error, Result};
use crate::norms::{xsb_weight, WeightVariant};
use crate::spectral::{FrequencyGrid, SpaceTimeField, SpaceTimeGrid};
use num_complex::Complex64;

/// One tau-column: linear between nodes, zero outside `[nodes[0], nodes[last]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlColumn {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

impl PlColumn {
    pub fn empty() -> Self {
        Self {
            nodes: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() < 2
    }

    pub fn lo(&self) -> f64 {
        self.nodes[0]
    }

    pub fn hi(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.is_empty() || x < self.lo() || x > self.hi() {
            return 0.0;
        }
        let i = self.nodes.partition_point(|&n| n <= x);
        if i == self.nodes.len() {
            return *self.values.last().unwrap();
        }
        let (x0, x1) = (self.nodes[i - 1], self.nodes[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        if x1 == x0 {
            return v0;
        }
        v0 + (v1 - v0) * (x - x0) / (x1 - x0)
    }

    /// Trapezoid over the nodes of an integrand built from `(tau, value)`.
    pub fn integral_of(&self, mut f: impl FnMut(f64, f64) -> f64) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let mut sum = 0.0;
        for i in 1..self.nodes.len() {
            let h = self.nodes[i] - self.nodes[i - 1];
            sum += 0.5
                * h
                * (f(self.nodes[i - 1], self.values[i - 1]) + f(self.nodes[i], self.values[i]));
        }
        sum
    }
}

/// Exact integral of `f(s) g(tau - s) ds` for two piecewise-linear columns.
fn pair_conv_at(f: &PlColumn, g: &PlColumn, tau: f64) -> f64 {
    let lo = f.lo().max(tau - g.hi());
    let hi = f.hi().min(tau - g.lo());
    if hi - lo <= 0.0 {
        return 0.0;
    }
    // breakpoints of the product: f's nodes plus the reflections of g's
    let mut pts = Vec::with_capacity(f.nodes.len() + g.nodes.len() + 2);
    pts.push(lo);
    let fi = f.nodes.partition_point(|&n| n <= lo);
    let mut a = f.nodes[fi..].iter().copied().take_while(|&n| n < hi).peekable();
    let gi = g.nodes.partition_point(|&n| n <= tau - hi);
    let mut b = g.nodes[gi..]
        .iter()
        .rev()
        .map(|&n| tau - n)
        .skip_while(|&x| x <= lo)
        .take_while(|&x| x < hi)
        .peekable();
    // merge the two ascending runs
    loop {
        match (a.peek(), b.peek()) {
            (Some(&x), Some(&y)) => {
                if x <= y {
                    pts.push(x);
                    a.next();
                } else {
                    pts.push(y);
                    b.next();
                }
            }
            (Some(&x), None) => {
                pts.push(x);
                a.next();
            }
            (None, Some(&y)) => {
                pts.push(y);
                b.next();
            }
            (None, None) => break,
        }
    }
    pts.push(hi);

    let mut sum = 0.0;
    for w in pts.windows(2) {
        let (p, q) = (w[0], w[1]);
        let h = q - p;
        if h <= 0.0 {
            continue;
        }
        let c = 0.5 * (p + q);
        let prod = |s: f64| f.eval(s) * g.eval(tau - s);
        sum += h / 6.0 * (prod(p) + 4.0 * prod(c) + prod(q));
    }
    sum
}

/// A space-time field stored as tau-columns over a uniform xi lattice.
#[derive(Debug, Clone)]
pub struct StripField {
    xi0: f64,
    xi_step: f64,
    tau_step: f64,
    /// xi-quadrature weights (trapezoid: 1/2 at the edge columns).
    col_weights: Vec<f64>,
    columns: Vec<PlColumn>,
}

fn trapezoid_weights(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i == 0 || i + 1 == n { 0.5 } else { 1.0 })
        .collect()
}

impl StripField {
    /// Indicator of `{ (tau, xi) : lo(xi) <= tau <= hi(xi) }` over the xi
    /// lattice `xi0 + i * xi_step`, `i < n_cols`.  Column nodes are the exact
    /// window edges plus the global tau lattice points strictly inside, so
    /// mass and L2 of the indicator are quadrature-exact.
    pub fn indicator(
        xi0: f64,
        xi_step: f64,
        n_cols: usize,
        tau_step: f64,
        mut window: impl FnMut(f64) -> (f64, f64),
    ) -> Result<Self> {
        if n_cols < 2 {
            return Err(Error::invalid_argument("strip needs at least 2 columns"));
        }
        if !(xi_step > 0.0) || !(tau_step > 0.0) {
            return Err(Error::invalid_argument("strip steps must be positive"));
        }
        let mut columns = Vec::with_capacity(n_cols);
        for i in 0..n_cols {
            let xi = xi0 + i as f64 * xi_step;
            let (lo, hi) = window(xi);
            if !(hi > lo) {
                columns.push(PlColumn::empty());
                continue;
            }
            let eps = 1e-9 * tau_step;
            let m_lo = (lo / tau_step + eps).floor() as i64 + 1;
            let m_hi = (hi / tau_step - eps).ceil() as i64 - 1;
            let mut nodes = Vec::with_capacity((m_hi - m_lo + 3).max(2) as usize);
            nodes.push(lo);
            for m in m_lo..=m_hi {
                let x = m as f64 * tau_step;
                if x > lo + eps && x < hi - eps {
                    nodes.push(x);
                }
            }
            nodes.push(hi);
            let values = vec![1.0; nodes.len()];
            columns.push(PlColumn { nodes, values });
        }
        Ok(Self {
            xi0,
            xi_step,
            tau_step,
            col_weights: trapezoid_weights(n_cols),
            columns,
        })
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn xi(&self, i: usize) -> f64 {
        self.xi0 + i as f64 * self.xi_step
    }

    pub fn xi_step(&self) -> f64 {
        self.xi_step
    }

    pub fn tau_step(&self) -> f64 {
        self.tau_step
    }

    pub fn columns(&self) -> &[PlColumn] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &PlColumn {
        &self.columns[i]
    }

    pub fn eval(&self, i: usize, tau: f64) -> f64 {
        self.columns[i].eval(tau)
    }

    /// Pointwise transform of the stored values.
    pub fn map_values(&self, mut f: impl FnMut(f64, f64, f64) -> f64) -> Self {
        let mut out = self.clone();
        for (i, col) in out.columns.iter_mut().enumerate() {
            let xi = self.xi0 + i as f64 * self.xi_step;
            for (n, v) in col.nodes.iter().zip(col.values.iter_mut()) {
                *v = f(*n, xi, *v);
            }
        }
        out
    }

    /// Multiply each column by a constant depending on its xi.
    pub fn scale_columns(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        let mut out = self.clone();
        for (i, col) in out.columns.iter_mut().enumerate() {
            let c = f(self.xi0 + i as f64 * self.xi_step);
            for v in &mut col.values {
                *v *= c;
            }
        }
        out
    }

    /// The field `(tau, xi) -> self(-tau, -xi)`, exact on the lattice.
    pub fn reflect(&self) -> Self {
        let n = self.columns.len();
        let columns = self
            .columns
            .iter()
            .rev()
            .map(|c| {
                let nodes: Vec<f64> = c.nodes.iter().rev().map(|&x| -x).collect();
                let values: Vec<f64> = c.values.iter().rev().copied().collect();
                PlColumn { nodes, values }
            })
            .collect();
        Self {
            xi0: -(self.xi0 + (n - 1) as f64 * self.xi_step),
            xi_step: self.xi_step,
            tau_step: self.tau_step,
            col_weights: self.col_weights.iter().rev().copied().collect(),
            columns,
        }
    }

    /// 2-D convolution.  The tau integral per column pair is exact on the PL
    /// model; the xi integral uses trapezoid weights over each contiguous run
    /// of contributing column pairs, which places the half-weights exactly at
    /// the product's support edges (including corners where both factors'
    /// edges coincide).  Output columns are materialised on the tau lattice.
    pub fn convolve(&self, g: &Self) -> Result<Self> {
        if (self.xi_step - g.xi_step).abs() > 1e-12 * self.xi_step
            || (self.tau_step - g.tau_step).abs() > 1e-12 * self.tau_step
        {
            return Err(Error::GridMismatch(
                "strip convolution requires matching lattice steps".into(),
            ));
        }
        let (nf, ng) = (self.columns.len(), g.columns.len());
        let n_out = nf + ng - 1;
        let dt = self.tau_step;
        let mut columns = Vec::with_capacity(n_out);
        for k in 0..n_out {
            let i_lo = k.saturating_sub(ng - 1);
            let i_hi = k.min(nf - 1);
            let contributing: Vec<usize> = (i_lo..=i_hi)
                .filter(|&i| !self.columns[i].is_empty() && !g.columns[k - i].is_empty())
                .collect();
            if contributing.is_empty() {
                columns.push(PlColumn::empty());
                continue;
            }
            // trapezoid weights per contiguous run of contributing indices
            let mut xi_weights = vec![1.0f64; contributing.len()];
            let mut run_start = 0;
            for idx in 0..contributing.len() {
                let run_ends = idx + 1 == contributing.len()
                    || contributing[idx + 1] != contributing[idx] + 1;
                if run_ends {
                    if idx > run_start {
                        xi_weights[run_start] = 0.5;
                        xi_weights[idx] = 0.5;
                    }
                    run_start = idx + 1;
                }
            }

            let mut env_lo = f64::INFINITY;
            let mut env_hi = f64::NEG_INFINITY;
            for &i in &contributing {
                let (fc, gc) = (&self.columns[i], &g.columns[k - i]);
                env_lo = env_lo.min(fc.lo() + gc.lo());
                env_hi = env_hi.max(fc.hi() + gc.hi());
            }
            let m_lo = (env_lo / dt).floor() as i64 - 1;
            let m_hi = (env_hi / dt).ceil() as i64 + 1;
            let mut values = vec![0.0; (m_hi - m_lo + 1) as usize];
            for (pos, &i) in contributing.iter().enumerate() {
                let (fc, gc) = (&self.columns[i], &g.columns[k - i]);
                let w = xi_weights[pos] * self.xi_step;
                let p_lo = ((fc.lo() + gc.lo()) / dt).floor() as i64;
                let p_hi = ((fc.hi() + gc.hi()) / dt).ceil() as i64;
                for m in p_lo.max(m_lo)..=p_hi.min(m_hi) {
                    let v = pair_conv_at(fc, gc, m as f64 * dt);
                    if v != 0.0 {
                        values[(m - m_lo) as usize] += w * v;
                    }
                }
            }
            let nodes: Vec<f64> = (m_lo..=m_hi).map(|m| m as f64 * dt).collect();
            columns.push(PlColumn { nodes, values });
        }
        Ok(Self {
            xi0: self.xi0 + g.xi0,
            xi_step: self.xi_step,
            tau_step: dt,
            col_weights: trapezoid_weights(n_out),
            columns,
        })
    }

    /// Weighted L2 norm with the `X^{s,b}` weight.
    pub fn weighted_l2(
        &self,
        s: f64,
        b: f64,
        params: DispersionParams,
        variant: WeightVariant,
    ) -> f64 {
        let mut sum = 0.0;
        for (i, col) in self.columns.iter().enumerate() {
            let xi = self.xi(i);
            let inner = col.integral_of(|tau, v| {
                let w = xsb_weight(tau, xi, s, b, params, variant);
                let wv = w * v;
                wv * wv
            });
            sum += self.col_weights[i] * self.xi_step * inner;
        }
        sum.sqrt()
    }

    /// Plain L2 norm.
    pub fn l2(&self) -> f64 {
        self.weighted_l2(0.0, 0.0, DispersionParams::plus(), WeightVariant::Rho)
    }

    /// Sample onto a dense grid whose xi axis must align with the columns
    /// (any xi node not backed by a column reads as zero).
    pub fn sample_on(&self, grid: &SpaceTimeGrid) -> Result<SpaceTimeField> {
        let xi_axis = &grid.xi_axis;
        let col_of: Vec<Option<usize>> = (0..xi_axis.n_nodes())
            .map(|ix| {
                let q = (xi_axis.node(ix) - self.xi0) / self.xi_step;
                let r = q.round();
                if (q - r).abs() < 1e-6 && r >= 0.0 && (r as usize) < self.columns.len() {
                    Some(r as usize)
                } else {
                    None
                }
            })
            .collect();
        let mut values =
            vec![Complex64::default(); grid.tau_axis.n_nodes() * xi_axis.n_nodes()];
        for it in 0..grid.tau_axis.n_nodes() {
            let tau = grid.tau_axis.node(it);
            for (ix, col) in col_of.iter().enumerate() {
                if let Some(c) = col {
                    let v = self.columns[*c].eval(tau);
                    if v != 0.0 {
                        values[it * xi_axis.n_nodes() + ix] = Complex64::new(v, 0.0);
                    }
                }
            }
        }
        SpaceTimeField::new(grid.clone(), values)
    }

    /// Smallest dense grid covering the strip, padded by one tau cell.
    pub fn bounding_grid(&self) -> Result<SpaceTimeGrid> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in &self.columns {
            if !c.is_empty() {
                lo = lo.min(c.lo());
                hi = hi.max(c.hi());
            }
        }
        if !lo.is_finite() {
            return Err(Error::invalid_argument("empty strip has no bounding grid"));
        }
        let m_lo = (lo / self.tau_step).floor() as i64 - 1;
        let m_hi = (hi / self.tau_step).ceil() as i64 + 1;
        let tau_axis = FrequencyGrid::new(
            m_lo as f64 * self.tau_step,
            m_hi as f64 * self.tau_step,
            (m_hi - m_lo + 1) as usize,
        )?;
        let xi_axis = FrequencyGrid::new(
            self.xi0,
            self.xi0 + (self.columns.len() - 1) as f64 * self.xi_step,
            self.columns.len(),
        )?;
        Ok(SpaceTimeGrid::new(tau_axis, xi_axis))
    }
}
