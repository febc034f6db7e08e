//! Jacobians of the maps `X -> A X A* + C` and `S -> S^-1` on the real
//! coordinates of the Hermitian matrices.

use crate::algebra::{AlgebraMatrix, PositiveDefiniteMatrix};
use crate::Result;

/// `(beta(m-1)/2 + 1) log |A* A|`.
pub fn log_jacobian_congruence(a: &AlgebraMatrix) -> Result<f64> {
    let beta = a.algebra().beta_f64();
    let m = a.order() as f64;
    Ok((beta * (m - 1.0) / 2.0 + 1.0) * a.log_gram_det()?)
}

/// `-(beta(m-1) + 2) log |S|` (absolute value of the Jacobian).
pub fn log_jacobian_inverse(s: &PositiveDefiniteMatrix) -> f64 {
    let beta = s.algebra().beta_f64();
    let m = s.order() as f64;
    -(beta * (m - 1.0) + 2.0) * s.log_det()
}
