//! Trapezoid quadrature on uniform grids.

use num_complex::Complex64;

use super::field::{SpaceTimeField, SpectralField};

/// Trapezoid rule over the grid span, `h * (v0/2 + v1 + ... + v_{n-1}/2)`.
pub fn quadrature(field: &SpectralField) -> Complex64 {
    let v = field.values();
    let n = v.len();
    let mut sum = (v[0] + v[n - 1]) * 0.5;
    for &x in &v[1..n - 1] {
        sum += x;
    }
    sum * field.grid().spacing()
}

/// Trapezoid rule applied to a real function of the nodes.
pub fn quadrature_real_fn(field: &SpectralField, mut f: impl FnMut(f64, Complex64) -> f64) -> f64 {
    let grid = field.grid();
    let n = grid.n_nodes();
    let mut sum = 0.0;
    for k in 0..n {
        let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        sum += w * f(grid.node(k), field.value(k));
    }
    sum * grid.spacing()
}

/// 2-D trapezoid rule of a real integrand over a space-time field.
pub fn quadrature2d_real_fn(
    field: &SpaceTimeField,
    mut f: impl FnMut(f64, f64, Complex64) -> f64,
) -> f64 {
    let tau_axis = &field.grid().tau_axis;
    let xi_axis = &field.grid().xi_axis;
    let (nt, nx) = (tau_axis.n_nodes(), xi_axis.n_nodes());
    let mut sum = 0.0;
    for it in 0..nt {
        let wt = if it == 0 || it == nt - 1 { 0.5 } else { 1.0 };
        let tau = tau_axis.node(it);
        let mut row = 0.0;
        for ix in 0..nx {
            let wx = if ix == 0 || ix == nx - 1 { 0.5 } else { 1.0 };
            row += wx * f(tau, xi_axis.node(ix), field.at(it, ix));
        }
        sum += wt * row;
    }
    sum * tau_axis.spacing() * xi_axis.spacing()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::{make_symmetric_grid, FrequencyGrid};

    #[test]
    fn constant_on_symmetric_grid() {
        let g = make_symmetric_grid(1.0, 3).unwrap();
        let f = SpectralField::from_real_fn(g, |_| 1.0).unwrap();
        let q = quadrature(&f);
        assert!((q.re - 2.0).abs() < 1e-14 && q.im == 0.0);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let g = make_symmetric_grid(5.0, 101).unwrap();
        let f = SpectralField::from_real_fn(g, |xi| xi).unwrap();
        assert!(quadrature(&f).norm() < 1e-12);
    }

    #[test]
    fn indicator_mass() {
        // chi_[0,1] sampled at spacing 1e-3; edges land on nodes so the
        // trapezoid mass is exact up to rounding.
        let g = FrequencyGrid::new(-2.0, 2.0, 4001).unwrap();
        let f = SpectralField::from_real_fn(g, |xi| {
            if (0.0..=1.0).contains(&xi) {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        assert!((quadrature(&f).re - 1.0).abs() <= 1e-3 * (1.0 + 1e-9));
    }
}
