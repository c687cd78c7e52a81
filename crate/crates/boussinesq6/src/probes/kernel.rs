//! The oscillatory kernel of the flow-map roughness probe,
//!
//! ```text
//! K(t, xi, xi1) = integral_0^t sin((t-t') gamma(xi))
//!                              cos(t' gamma(xi2)) cos(t' gamma(xi1)) dt'
//! ```
//!
//! in closed form.  Writing `Omega± = gamma(xi1) ± gamma(xi2)` and using the
//! product-to-sum identities, each half reduces to
//!
//! ```text
//! I(Omega) = (gamma t^2 / 2) sinc(t (gamma + Omega)/2) sinc(t (gamma - Omega)/2),
//! ```
//!
//! which is uniformly stable: the resonance `Omega -> gamma` and the
//! cancellation `cos a - cos b` for small arguments are both absorbed into
//! `sinc`, whose own small-argument series plays the role of the
//! near-resonant fallback.  A composite Gauss-Legendre rule sized by the
//! fastest combined frequency serves as the independent quadrature oracle.

use crate::dispersion::{gamma, DispersionParams};

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn half_kernel(t: f64, g: f64, omega: f64) -> f64 {
    0.5 * g * t * t * sinc(0.5 * t * (g + omega)) * sinc(0.5 * t * (g - omega))
}

/// Closed-form evaluation of the kernel.
pub fn kernel_k(t: f64, xi: f64, xi1: f64, xi2: f64, params: DispersionParams) -> f64 {
    let g = gamma(xi, params);
    let g1 = gamma(xi1, params);
    let g2 = gamma(xi2, params);
    0.5 * (half_kernel(t, g, g1 + g2) + half_kernel(t, g, g1 - g2))
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Oracle: composite Gauss-Legendre quadrature of the kernel integrand, with
/// panels sized so each sees at most ~6 radians of the fastest oscillation.
pub fn kernel_k_quadrature(t: f64, xi: f64, xi1: f64, xi2: f64, params: DispersionParams) -> f64 {
    let g = gamma(xi, params);
    let g1 = gamma(xi1, params);
    let g2 = gamma(xi2, params);
    let omega_max = g + g1 + g2;
    let panels = ((t * omega_max / 6.0).ceil() as usize).max(4);
    let (nodes, weights) = gauss_legendre(20);
    let h = t / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let a = p as f64 * h;
        let mid = a + 0.5 * h;
        let mut panel = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            let tp = mid + 0.5 * h * x;
            panel += w * ((t - tp) * g).sin() * (tp * g2).cos() * (tp * g1).cos();
        }
        sum += 0.5 * h * panel;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(20);
        // degree 15 polynomial, exact for n >= 8
        let q: f64 = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * (xi.powi(15) + 3.0 * xi.powi(8) - xi.powi(2) + 2.0))
            .sum();
        let exact = 3.0 * 2.0 / 9.0 - 2.0 / 3.0 + 4.0;
        assert!((q - exact).abs() < 1e-13);
    }

    #[test]
    fn vanishes_at_t_zero() {
        let p = DispersionParams::plus();
        assert_eq!(kernel_k(0.0, 2.0, 17.0, -15.0, p), 0.0);
    }

    #[test]
    fn zero_inner_frequencies_closed_form() {
        // gamma(xi1) = gamma(xi2) = 0 gives K = (1 - cos(t gamma))/gamma
        let p = DispersionParams::plus();
        for &(t, xi) in &[(0.3, 1.5), (1.0, 2.5), (0.05, 3.0)] {
            let g = gamma(xi, p);
            let expect = (1.0 - (t * g).cos()) / g;
            let got = kernel_k(t, xi, 0.0, 0.0, p);
            assert!((got - expect).abs() < 1e-14 * expect.abs().max(1e-10));
        }
    }

    #[test]
    fn small_t_quadratic_regime() {
        // when all three phases stay small, K ~ gamma(xi) t^2 / 2
        let p = DispersionParams::plus();
        let (xi, xi1, xi2) = (2.0, 8.0, -6.0);
        let t = 1e-4;
        let k = kernel_k(t, xi, xi1, xi2, p);
        let lead = gamma(xi, p) * t * t / 2.0;
        assert!((k - lead).abs() <= 0.1 * lead, "k={k} lead={lead}");
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for params in DispersionParams::both() {
            for _ in 0..150 {
                let t: f64 = rng.gen_range(0.0..1.0);
                let xi = rng.gen_range(-3.0..3.0);
                let xi1 = rng.gen_range(-64.0..64.0);
                let xi2 = xi - xi1;
                let cf = kernel_k(t, xi, xi1, xi2, params);
                let q = kernel_k_quadrature(t, xi, xi1, xi2, params);
                let denom = q.abs().max(1e-6 * t.max(1e-12));
                assert!(
                    (cf - q).abs() / denom <= 1e-10,
                    "t={t} xi={xi} xi1={xi1}: cf={cf:.15e} q={q:.15e}"
                );
            }
        }
    }

    #[test]
    fn near_resonant_arguments_stay_accurate() {
        // drive Omega- = gamma(xi1) - gamma(xi2) through gamma(xi) itself,
        // where the naive two-cosine difference formula would cancel badly
        let params = DispersionParams::plus();
        let xi = 1.0; // gamma = 1
        let xi2 = 5.0;
        // gamma(xi1) - gamma(5) crosses 1 near xi1 = 5.0133
        for &off in &[-1e-2, -1e-5, 0.0, 1e-5, 1e-2] {
            let xi1 = 5.013317 + off;
            let t = 0.77;
            let cf = kernel_k(t, xi, xi1, xi2, params);
            let q = kernel_k_quadrature(t, xi, xi1, xi2, params);
            assert!(
                (cf - q).abs() <= 1e-10 * q.abs().max(1e-8),
                "off={off} cf={cf:.15e} q={q:.15e}"
            );
        }
        // exact degenerate pair Omega- = 0 with Omega+ large
        let cf = kernel_k(0.7, 1.3, 2.0, -2.0, params);
        let q = kernel_k_quadrature(0.7, 1.3, 2.0, -2.0, params);
        assert!((cf - q).abs() <= 1e-10 * q.abs().max(1e-8));
    }
}
