//! A pseudospectral laboratory for the sixth-order Boussinesq equation
//!
//! ```text
//! u_tt = u_xx + beta u_xxxx + u_xxxxxx + (u^2)_xx,   beta = +1 or -1.
//! ```
//!
//! The crate has three layers:
//!
//! * **Substrate** ([`spectral`], [`dispersion`], [`norms`]): uniform
//!   frequency grids with trapezoid quadrature, a forward/inverse DFT pair in
//!   the `e^{-i x xi}` convention, discrete convolution, the model's symbols
//!   `gamma`, `rho` and the Duhamel multiplier `xi^2/gamma`, and the Sobolev
//!   `H^s` / weighted space-time `X^{s,b}` norms in both the `gamma` and the
//!   cubic-surrogate `rho` weight.
//! * **Evolution** ([`evolution`]): the exact linear propagators (cosine and
//!   sine families), a Picard iteration on the Duhamel integral equation over
//!   a large periodic torus, an independent fourth-order integrating-factor
//!   time stepper used as a cross-check oracle, and an empirical probe of the
//!   flow map's Lipschitz constant.
//! * **Probes** ([`probes`]): quantitative experiments that measure growth
//!   exponents: the bilinear-estimate failure sweep driven by indicator data
//!   on thin slanted strips, the flow-map roughness sweep driven by
//!   high-frequency indicator data at short times, the closed-form
//!   oscillatory kernel behind it, and numeric checks of the two calculus
//!   inequalities the estimates rest on.
//!
//! The [`cli`] module wires these into the `bq6` binary
//! (`solve`, `bilinear-sweep`, `illposed-sweep`, `checks`); each capability
//! also has a runnable example under `examples/`.
//!
//! Conventions, fixed once: the Fourier transform is
//! `g^(xi) = integral e^{-i x xi} g(x) dx`; convolution carries no `2 pi`
//! factors (every experiment is ratio- or slope-based, so constant factors
//! cancel); the Japanese bracket is `<x> = 1 + |x|`.

pub mod cli;
pub mod dispersion;
pub mod error;
pub mod evolution;
pub mod norms;
pub mod probes;
pub mod spectral;

pub use error::{Error, Result};
