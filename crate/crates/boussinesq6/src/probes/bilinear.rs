//! The bilinear-estimate failure experiment.
//!
//! Indicator data on the slanted strip `A_N = { N <= xi <= N + N^{-alpha},
//! |tau - rho(xi)| <= 1 }` and its reflection witness the breakdown of the
//! quadratic Duhamel estimate below the critical Sobolev index: the ratio
//!
//! ```text
//! || weight^{-a} * (xi^2 / 2 gamma) (u_N * v_N) ||  /  (||u_N|| ||v_N||)
//! ```
//!
//! grows like a power of `N` whose exponent the sweep measures and compares
//! against `-(2+alpha) s - (2-alpha) a - 3 alpha / 2`.

use serde::{Deserialize, Serialize};

use super::fit::fit_loglog;
use super::strip::StripField;
use super::ExperimentReport;
use crate::dispersion::{multiplier, rho, DispersionParams};
use crate::error::{Error, Result};
use crate::norms::{xsb_weight, WeightVariant};

/// Parameters of a single counterexample evaluation at one `N`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BilinearSpec {
    pub n: f64,
    pub alpha: f64,
    pub s: f64,
    pub b: f64,
    pub a: f64,
    pub params: DispersionParams,
    pub tau_resolution: f64,
    pub xi_resolution: f64,
}

impl BilinearSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.n >= 4.0) {
            return Err(Error::invalid_spec("N must be >= 4"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid_spec("alpha must lie in (0, 1)"));
        }
        let width = self.n.powf(-self.alpha);
        if !(self.xi_resolution > 0.0 && self.xi_resolution <= width / 8.0 + 1e-12) {
            return Err(Error::invalid_spec(format!(
                "xi_resolution {} must resolve the strip width: <= N^-alpha/8 = {}",
                self.xi_resolution,
                width / 8.0
            )));
        }
        if !(self.tau_resolution > 0.0 && self.tau_resolution <= 0.125 + 1e-12) {
            return Err(Error::invalid_spec(
                "tau_resolution must be <= 1/8 to resolve the unit tau window",
            ));
        }
        Ok(())
    }

    /// Width `N^{-alpha}` of the strip in xi.
    pub fn strip_width(&self) -> f64 {
        self.n.powf(-self.alpha)
    }
}

/// Indicator fields on `A_N` and `-A_N` (the latter the exact reflection).
pub fn build_counterexample_pair(spec: &BilinearSpec) -> Result<(StripField, StripField)> {
    spec.validate()?;
    let width = spec.strip_width();
    let n_cols = ((width / spec.xi_resolution - 1e-9).ceil() as usize).max(8) + 1;
    let xi_step = width / (n_cols - 1) as f64;
    let params = spec.params;
    let f = StripField::indicator(spec.n, xi_step, n_cols, spec.tau_resolution, |xi| {
        let c = rho(xi, params);
        (c - 1.0, c + 1.0)
    })?;
    let g = f.reflect();
    Ok((f, g))
}

/// Remove the `X^{s,b}` weight from an indicator strip:
/// `u^ = f / (<|tau| - rho(|xi|)>^b <xi>^s)`.
pub fn unapply_weight_strip(
    field: &StripField,
    s: f64,
    b: f64,
    params: DispersionParams,
) -> StripField {
    field.map_values(|tau, xi, v| v / xsb_weight(tau, xi, s, b, params, WeightVariant::Rho))
}

/// Left side of the bilinear estimate: the `X^{s,-a}` norm (rho weight) of
/// `(1/2) (xi^2/gamma(xi)) (u^ * v^)`.
pub fn bilinear_lhs(
    u_hat: &StripField,
    v_hat: &StripField,
    s: f64,
    a: f64,
    params: DispersionParams,
) -> Result<f64> {
    let conv = u_hat.convolve(v_hat)?;
    let weighted = conv.scale_columns(|xi| 0.5 * multiplier(xi, params));
    Ok(weighted.weighted_l2(s, -a, params, WeightVariant::Rho))
}

/// `X^{s,b}` norm (rho weight) of a strip field.
pub fn strip_xsb_norm(field: &StripField, s: f64, b: f64, params: DispersionParams) -> f64 {
    field.weighted_l2(s, b, params, WeightVariant::Rho)
}

/// The measured quantity at one `N`: `lhs / (||u_N|| ||v_N||)`.
pub fn bilinear_ratio_point(spec: &BilinearSpec) -> Result<f64> {
    let (f, g) = build_counterexample_pair(spec)?;
    let u = unapply_weight_strip(&f, spec.s, spec.b, spec.params);
    let v = unapply_weight_strip(&g, spec.s, spec.b, spec.params);
    let lhs = bilinear_lhs(&u, &v, spec.s, spec.a, spec.params)?;
    let den = strip_xsb_norm(&u, spec.s, spec.b, spec.params)
        * strip_xsb_norm(&v, spec.s, spec.b, spec.params);
    Ok(lhs / den)
}

/// Exponent the ratio is predicted to grow with,
/// `-(2+alpha) s - (2-alpha) a - 3 alpha / 2`.
pub fn predicted_bilinear_exponent(s: f64, a: f64, alpha: f64) -> f64 {
    -(2.0 + alpha) * s - (2.0 - alpha) * a - 1.5 * alpha
}

/// Sobolev index at which the predicted exponent changes sign.
pub fn bilinear_threshold_s(a: f64, alpha: f64) -> f64 {
    -(1.5 * alpha + (2.0 - alpha) * a) / (alpha + 2.0)
}

/// The proof's coupling of the strip width to the weight index,
/// `alpha = (1 - 2a)/(1 - a)`.
pub fn alpha_for_a(a: f64) -> f64 {
    (1.0 - 2.0 * a) / (1.0 - a)
}

/// Per-`N` parameters shared across a sweep; resolutions scale with `N` so
/// every strip is equally resolved.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BilinearSweepTemplate {
    pub alpha: f64,
    pub s: f64,
    pub b: f64,
    pub a: f64,
    pub params: DispersionParams,
    /// tau lattice step (must be <= 1/8).
    pub tau_resolution: f64,
    /// xi lattice step as a fraction of the strip width (must be <= 1/8).
    pub xi_resolution_fraction: f64,
}

impl BilinearSweepTemplate {
    pub fn spec_for(&self, n: f64) -> BilinearSpec {
        BilinearSpec {
            n,
            alpha: self.alpha,
            s: self.s,
            b: self.b,
            a: self.a,
            params: self.params,
            tau_resolution: self.tau_resolution,
            xi_resolution: self.xi_resolution_fraction * n.powf(-self.alpha),
        }
    }
}

impl Default for BilinearSweepTemplate {
    fn default() -> Self {
        Self {
            alpha: 1.0 / 3.0,
            s: -0.8,
            b: 0.55,
            a: 0.4,
            params: DispersionParams::plus(),
            tau_resolution: 0.125,
            xi_resolution_fraction: 0.125,
        }
    }
}

/// Run the ratio at every `N`, fit the log-log slope and compare with the
/// predicted exponent.  Passes when the measured slope reaches the
/// prediction minus 0.15; a fit residual above 0.2 marks the report
/// unreliable regardless of pass/fail.
pub fn bilinear_ratio_sweep(
    template: &BilinearSweepTemplate,
    n_list: &[f64],
) -> Result<ExperimentReport> {
    let mut points = Vec::with_capacity(n_list.len());
    for &n in n_list {
        points.push((n, bilinear_ratio_point(&template.spec_for(n))?));
    }
    let (slope, _, residual) = fit_loglog(&points)?;
    let predicted = predicted_bilinear_exponent(template.s, template.a, template.alpha);
    Ok(ExperimentReport {
        points,
        fitted_slope: slope,
        fit_residual: residual,
        predicted_exponent: predicted,
        pass: slope >= predicted - 0.15,
        reliable: residual <= 0.2,
        informational: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::gamma;
    use crate::spectral::convolve2d;

    fn spec_n8() -> BilinearSpec {
        BilinearSpec {
            n: 8.0,
            alpha: 1.0 / 3.0,
            s: -0.8,
            b: 0.55,
            a: 0.4,
            params: DispersionParams::plus(),
            tau_resolution: 0.125,
            xi_resolution: 8.0f64.powf(-1.0 / 3.0) / 8.0,
        }
    }

    #[test]
    fn validation_rejects_coarse_grids() {
        let mut s = spec_n8();
        s.xi_resolution = 1.0;
        assert!(s.validate().is_err());
        let mut s = spec_n8();
        s.tau_resolution = 0.5;
        assert!(s.validate().is_err());
        let mut s = spec_n8();
        s.n = 2.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn pair_support_and_reflection() {
        let spec = spec_n8();
        let (f, g) = build_counterexample_pair(&spec).unwrap();
        let w = spec.strip_width();
        // support box check for f
        for i in 0..f.n_cols() {
            let xi = f.xi(i);
            assert!(xi >= 8.0 - 1e-12 && xi <= 8.0 + w + 1e-12);
            let col = f.column(i);
            assert!(col.lo() >= rho(8.0, spec.params) - 1.0 - 1e-9);
            assert!(col.hi() <= rho(8.0 + w, spec.params) + 1.0 + 1e-9);
        }
        // g is the exact reflection
        for i in 0..f.n_cols() {
            let xi = f.xi(i);
            let j = (0..g.n_cols()).find(|&j| (g.xi(j) + xi).abs() < 1e-12).unwrap();
            for &tau in f.column(i).nodes.iter() {
                assert_eq!(f.eval(i, tau), g.eval(j, -tau));
            }
        }
    }

    #[test]
    fn pair_l2_mass() {
        // ||f_N|| = sqrt(2 N^-alpha), quadrature-exact for the strip model
        for &n in &[8.0f64, 32.0, 128.0] {
            let spec = BilinearSpec { n, ..spec_n8() };
            let spec = BilinearSpec {
                xi_resolution: spec.strip_width() / 8.0,
                ..spec
            };
            let (f, g) = build_counterexample_pair(&spec).unwrap();
            let expect = (2.0 * n.powf(-spec.alpha)).sqrt();
            assert!((f.l2() - expect).abs() <= 0.02 * expect, "n={n} l2={}", f.l2());
            assert!((g.l2() - expect).abs() <= 0.02 * expect);
        }
    }

    #[test]
    fn mass_scaling_slope() {
        // ||f_N|| ~ N^{-alpha/2}: slope -alpha/2 within 0.02
        let template = BilinearSweepTemplate::default();
        let points: Vec<(f64, f64)> = [8.0f64, 16.0, 32.0, 64.0]
            .iter()
            .map(|&n| {
                let (f, _) = build_counterexample_pair(&template.spec_for(n)).unwrap();
                (n, f.l2())
            })
            .collect();
        let (slope, _, _) = fit_loglog(&points).unwrap();
        assert!((slope + template.alpha / 2.0).abs() <= 0.02, "slope={slope}");
    }

    #[test]
    fn strip_conv_against_dense_brute_force() {
        // N = 8: sample the strips onto a dense grid covering A_N, -A_N and
        // the sum set, convolve densely, and compare on the output support
        let spec = spec_n8();
        let (f, g) = build_counterexample_pair(&spec).unwrap();
        let conv = f.convolve(&g).unwrap();

        let w = spec.strip_width();
        let tau_hi = rho(8.0 + w, spec.params) + 2.0;
        let dt = spec.tau_resolution;
        let n_tau = 2 * ((tau_hi / dt).ceil() as usize) + 1;
        let tau_axis = crate::spectral::FrequencyGrid::new(
            -(((n_tau - 1) / 2) as f64) * dt,
            ((n_tau - 1) / 2) as f64 * dt,
            n_tau,
        )
        .unwrap();
        let dxi = f.xi_step();
        let m = ((8.0 + w) / dxi).ceil() as i64 + 1;
        let xi_axis =
            crate::spectral::FrequencyGrid::new(-(m as f64) * dxi, m as f64 * dxi, 2 * m as usize + 1)
                .unwrap();
        let grid = crate::spectral::SpaceTimeGrid::new(tau_axis.clone(), xi_axis.clone());
        let fd = f.sample_on(&grid).unwrap();
        let gd = g.sample_on(&grid).unwrap();
        let cd = convolve2d(&fd, &gd).unwrap();

        // compare pointwise on the central columns
        let mut worst = 0.0f64;
        let mut peak = 0.0f64;
        for k in 0..conv.n_cols() {
            let xi = conv.xi(k);
            let ix = match (0..xi_axis.n_nodes()).find(|&ix| (xi_axis.node(ix) - xi).abs() < 1e-9) {
                Some(ix) => ix,
                None => continue,
            };
            for it in 0..tau_axis.n_nodes() {
                let tau = tau_axis.node(it);
                let a = conv.eval(k, tau);
                let b = cd.at(it, ix).re;
                worst = worst.max((a - b).abs());
                peak = peak.max(a.abs());
            }
        }
        assert!(peak > 0.0);
        // dense route carries O(h) indicator-edge error; agreement within 12%
        // of the peak confirms geometry, offsets and scaling
        assert!(worst <= 0.12 * peak, "worst={worst} peak={peak}");
    }

    #[test]
    fn conv_lower_bounded_on_slanted_segment() {
        // f_N * g_N >= c > 0 along tau = rho(N + xi) - rho(N) for xi in the
        // middle of the sum support (the slanted rectangle of the argument);
        // c frozen from the overlap oracle below
        let spec = spec_n8();
        let (f, g) = build_counterexample_pair(&spec).unwrap();
        let conv = f.convolve(&g).unwrap();
        let w = spec.strip_width();
        for frac in [0.25, 0.5, 0.75] {
            let xi = frac * w;
            let k = (0..conv.n_cols())
                .min_by(|&a, &b| {
                    (conv.xi(a) - xi)
                        .abs()
                        .partial_cmp(&(conv.xi(b) - xi).abs())
                        .unwrap()
                })
                .unwrap();
            let xi_k = conv.xi(k);
            let tau = rho(8.0 + xi_k, spec.params) - rho(8.0, spec.params);
            let got = conv.eval(k, tau);
            // overlap oracle: integral over u of the tent overlap
            let oracle = overlap_oracle(&spec, tau, xi_k);
            assert!(got > 0.05, "conv at ({tau}, {xi_k}) = {got}");
            assert!(
                (got - oracle).abs() <= 0.02 * oracle.max(0.05),
                "strip {got} vs oracle {oracle}"
            );
        }
    }

    /// Independent reduction for the pure indicator pair: the inner tau
    /// integral of chi * chi is the overlap of two unit windows, leaving an
    /// explicit 1-D integral evaluated by fine midpoint quadrature.
    fn overlap_oracle(spec: &BilinearSpec, tau: f64, xi: f64) -> f64 {
        let w = spec.strip_width();
        let lo = spec.n + xi.max(0.0);
        let hi = spec.n + w + xi.min(0.0);
        if hi <= lo {
            return 0.0;
        }
        let m = 200_000;
        let h = (hi - lo) / m as f64;
        let mut sum = 0.0;
        for i in 0..m {
            let u = lo + (i as f64 + 0.5) * h;
            let delta = rho(u, spec.params) - rho(u - xi, spec.params);
            sum += (2.0 - (tau - delta).abs()).max(0.0);
        }
        sum * h
    }

    #[test]
    fn lhs_multiplier_oracle_on_isolated_columns() {
        // strips concentrated near xi = 1 and xi = 1: the output columns near
        // xi = 2 pick up the multiplier value there
        let params = DispersionParams::plus();
        let u = StripField::indicator(1.0 - 0.0625, 0.0625, 3, 0.125, |_| (-0.5, 0.5)).unwrap();
        let lhs = bilinear_lhs(&u, &u, 0.0, 0.4, params).unwrap();
        // oracle: conv columns sit near xi = 2 where the multiplier is
        // xi^2/gamma(xi); weight-norm computed on the scaled plain conv
        let conv = u.convolve(&u).unwrap();
        let manual = conv
            .scale_columns(|xi| 0.5 * xi * xi / gamma(xi, params).max(1e-300))
            .weighted_l2(0.0, -0.4, params, WeightVariant::Rho);
        assert!((lhs - manual).abs() < 1e-12 * manual);
        // and against the mid-column value by hand
        let mult2 = multiplier(2.0, params);
        assert!((mult2 - 4.0 / gamma(2.0, params)).abs() < 1e-14);
    }

    #[test]
    fn lhs_zero_and_monotone_in_a() {
        let spec = spec_n8();
        let (f, g) = build_counterexample_pair(&spec).unwrap();
        let u = unapply_weight_strip(&f, spec.s, spec.b, spec.params);
        let v = unapply_weight_strip(&g, spec.s, spec.b, spec.params);
        let zero = u.map_values(|_, _, _| 0.0);
        assert_eq!(bilinear_lhs(&zero, &v, spec.s, spec.a, spec.params).unwrap(), 0.0);
        let l_small_a = bilinear_lhs(&u, &v, spec.s, 0.2, spec.params).unwrap();
        let l_big_a = bilinear_lhs(&u, &v, spec.s, 0.45, spec.params).unwrap();
        assert!(l_big_a <= l_small_a + 1e-12);
    }

    #[test]
    fn reflection_and_swap_invariance() {
        let spec = spec_n8();
        let (f, g) = build_counterexample_pair(&spec).unwrap();
        let u = unapply_weight_strip(&f, spec.s, spec.b, spec.params);
        let v = unapply_weight_strip(&g, spec.s, spec.b, spec.params);
        let base = bilinear_lhs(&u, &v, spec.s, spec.a, spec.params).unwrap();
        let refl = bilinear_lhs(&u.reflect(), &v.reflect(), spec.s, spec.a, spec.params).unwrap();
        let swap = bilinear_lhs(&v, &u, spec.s, spec.a, spec.params).unwrap();
        assert!((base - refl).abs() <= 1e-10 * base, "base={base} refl={refl}");
        assert!((base - swap).abs() <= 1e-10 * base);
    }

    #[test]
    fn exponent_arithmetic() {
        // a = 0.4 couples to alpha = 1/3 and the threshold lands at -1/2
        assert!((alpha_for_a(0.4) - 1.0 / 3.0).abs() < 1e-15);
        assert!((bilinear_threshold_s(0.4, 1.0 / 3.0) + 0.5).abs() < 1e-15);
        let p = predicted_bilinear_exponent(-0.8, 0.4, 1.0 / 3.0);
        assert!((p - 0.7).abs() < 1e-12, "predicted {p}");
    }

    #[test]
    fn resolution_stability_at_small_n() {
        let template = BilinearSweepTemplate::default();
        let spec = template.spec_for(16.0);
        let fine = BilinearSpec {
            tau_resolution: spec.tau_resolution / 2.0,
            xi_resolution: spec.xi_resolution / 2.0,
            ..spec.clone()
        };
        let r0 = bilinear_ratio_point(&spec).unwrap();
        let r1 = bilinear_ratio_point(&fine).unwrap();
        assert!(
            (r1 - r0).abs() <= 0.01 * r0,
            "ratio moved by {} ({} -> {})",
            (r1 - r0).abs() / r0,
            r0,
            r1
        );
    }
}
