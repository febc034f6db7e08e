//! Riesz matrix-variate distributions over the real normed division algebras.
//!
//! The crate is `no_std` (with `alloc`). It provides:
//!
//! * [`algebra`]: Hermitian and positive definite matrices over the reals,
//!   complexes and quaternions (quaternions are carried through their 2m x 2m
//!   complex embedding), with minors, Cholesky factors and spectra.
//! * [`special`]: multivariate gamma functions with positive and negative
//!   weights, generalized Pochhammer symbols, the highest weight vector
//!   `q_kappa`, Jack polynomials and the two-argument `0F0` series.
//! * [`riesz`]: densities, Laplace-type normalizing constants, characteristic
//!   functions and joint eigenvalue densities of the Type I and Type II
//!   distributions, plus the Jacobian factors of congruence and inversion.
//! * [`sampler`]: a triangular (Bartlett-type) generator with one counter-based
//!   random substream per draw.
//! * [`quadrature`] and [`stats`]: the numerical plumbing used by the checks.
#![no_std]

extern crate alloc;

pub mod algebra;
mod error;
pub mod quadrature;
pub mod riesz;
pub mod sampler;
pub mod special;
pub mod stats;

pub use error::{Error, Result};

pub use nalgebra::Complex;

/// Double precision complex number used for every embedding.
pub type C64 = Complex<f64>;
