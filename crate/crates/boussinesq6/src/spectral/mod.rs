//! Grids, quadrature, DFT and convolution: the numerical substrate.

mod convolve;
mod dft;
mod field;
mod grid;
mod quadrature;

pub use convolve::{convolve, convolve2d};
pub use dft::{dft_forward, dft_inverse};
pub use field::{SpaceTimeField, SpectralField};
pub use grid::{make_symmetric_grid, FrequencyGrid, SpaceTimeGrid};
pub use quadrature::{quadrature, quadrature2d_real_fn, quadrature_real_fn};
