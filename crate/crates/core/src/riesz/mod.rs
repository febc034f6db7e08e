//! Riesz distributions of Type I and Type II: densities, normalizing
//! constants, characteristic functions and eigenvalue densities.

mod charfn;
mod density;
mod eigen;
mod jacobian;
mod laplace;
mod params;

pub use eigen::{log_eigen_measure_constant, EigenDensity, EigenRoute, HAAR_NODES};
pub use jacobian::{log_jacobian_congruence, log_jacobian_inverse};
pub use laplace::log_laplace_integral;
pub use params::{RieszParams, Scale, Variant};
