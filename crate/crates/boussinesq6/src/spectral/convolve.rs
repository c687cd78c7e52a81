//! Discrete convolution on shared grids.
//!
//! `(f * g)(xi) ~ h * sum_i f_i g(xi - xi_i)`, evaluated on the input grid
//! itself: the sum lattice is truncated back to the input span.  Callers must
//! size grids so the convolution support stays inside; this is enforced by a
//! boundary-mass check on the outermost output nodes.

use num_complex::Complex64;

use super::field::{SpaceTimeField, SpectralField};
use crate::error::{Error, Result};

const BOUNDARY_MASS_TOL: f64 = 1e-10;

fn lattice_offset(xi_min: f64, spacing: f64) -> Result<i64> {
    let q = xi_min / spacing;
    let r = q.round();
    if (q - r).abs() > 1e-9 {
        return Err(Error::invalid_argument(
            "convolution grid must contain the origin on its lattice",
        ));
    }
    Ok(r as i64)
}

/// 1-D convolution of two fields on the same grid.
pub fn convolve(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch(
            "convolve requires both fields on the same grid".into(),
        ));
    }
    let grid = f.grid();
    let n = grid.n_nodes() as i64;
    let h = grid.spacing();
    let q = lattice_offset(grid.xi_min(), h)?;

    let fv = f.values();
    let gv = g.values();
    let mut out = vec![Complex64::default(); n as usize];
    for k in 0..n {
        let mut acc = Complex64::default();
        // pairs i + j = k - q
        let m = k - q;
        let i_lo = (m - (n - 1)).max(0);
        let i_hi = m.min(n - 1);
        for i in i_lo..=i_hi {
            acc += fv[i as usize] * gv[(m - i) as usize];
        }
        out[k as usize] = acc * h;
    }

    let total: f64 = out.iter().map(|v| v.norm()).sum::<f64>() * h;
    let ring = (out[0].norm() + out[n as usize - 1].norm()) * h;
    if total > 0.0 && ring > BOUNDARY_MASS_TOL * total {
        return Err(Error::ConvolutionOverflow {
            discarded: ring / total,
        });
    }
    SpectralField::new(grid.clone(), out)
}

/// 2-D convolution of space-time fields on the same grid.
///
/// Zero columns and zero tau-segments are skipped, so indicator-type inputs
/// with small support convolve cheaply even on large grids.
pub fn convolve2d(f: &SpaceTimeField, g: &SpaceTimeField) -> Result<SpaceTimeField> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch(
            "convolve2d requires both fields on the same grid".into(),
        ));
    }
    let grid = f.grid().clone();
    let (nt, nx) = (grid.tau_axis.n_nodes() as i64, grid.xi_axis.n_nodes() as i64);
    let h_tau = grid.tau_axis.spacing();
    let h_xi = grid.xi_axis.spacing();
    let q_tau = lattice_offset(grid.tau_axis.xi_min(), h_tau)?;
    let q_xi = lattice_offset(grid.xi_axis.xi_min(), h_xi)?;

    // Nonzero tau range per column, None for all-zero columns.
    let column_ranges = |fld: &SpaceTimeField| -> Vec<Option<(i64, i64)>> {
        (0..nx as usize)
            .map(|ix| {
                let mut lo = None;
                let mut hi = 0usize;
                for it in 0..nt as usize {
                    if fld.at(it, ix).norm_sqr() != 0.0 {
                        if lo.is_none() {
                            lo = Some(it);
                        }
                        hi = it;
                    }
                }
                lo.map(|l| (l as i64, hi as i64))
            })
            .collect()
    };
    let f_ranges = column_ranges(f);
    let g_ranges = column_ranges(g);

    let mut out = SpaceTimeField::zeros(grid.clone());
    let scale = h_tau * h_xi;
    for (ixf, fr) in f_ranges.iter().enumerate() {
        let Some((f_lo, f_hi)) = fr else { continue };
        for (ixg, gr) in g_ranges.iter().enumerate() {
            let Some((g_lo, g_hi)) = gr else { continue };
            let kx = ixf as i64 + ixg as i64 + q_xi;
            if kx < 0 || kx >= nx {
                continue;
            }
            for itf in *f_lo..=*f_hi {
                let fv = f.at(itf as usize, ixf);
                if fv.norm_sqr() == 0.0 {
                    continue;
                }
                for itg in *g_lo..=*g_hi {
                    let kt = itf + itg + q_tau;
                    if kt < 0 || kt >= nt {
                        continue;
                    }
                    let gv = g.at(itg as usize, ixg);
                    *out.at_mut(kt as usize, kx as usize) += fv * gv * scale;
                }
            }
        }
    }

    // Boundary ring mass vs total mass.
    let mut total = 0.0;
    let mut ring = 0.0;
    for it in 0..nt as usize {
        for ix in 0..nx as usize {
            let m = out.at(it, ix).norm();
            total += m;
            if it == 0 || it + 1 == nt as usize || ix == 0 || ix + 1 == nx as usize {
                ring += m;
            }
        }
    }
    if total > 0.0 && ring > BOUNDARY_MASS_TOL * total {
        return Err(Error::ConvolutionOverflow {
            discarded: ring / total,
        });
    }
    Ok(out)
}
