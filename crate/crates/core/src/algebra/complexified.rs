//! Functions of complex matrices `A + iB` built from Hermitian `A`, `B`,
//! as they appear in characteristic functions.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::{Algebra, HermitianMatrix};
use crate::{Error, Result, C64};

/// `log |I - iH|` on the principal branch, summed eigenvalue by eigenvalue
/// so that no branch cut is crossed.
pub fn log_det_identity_minus_i(h: &HermitianMatrix) -> C64 {
    let d = h.algebra().embedding_factor() as f64;
    let eig = h.embedding().clone().symmetric_eigen();
    let mut acc = C64::new(0.0, 0.0);
    for &mu in eig.eigenvalues.iter() {
        acc += C64::new(1.0, -mu).ln();
    }
    acc / d
}

/// Logarithms of the pivots of the unpivoted LU factorization, one per
/// algebra row. For a quaternion embedding the two pivots of a row agree
/// and their mean logarithm is used.
pub fn pivot_logs_complex(algebra: Algebra, e: &DMatrix<C64>) -> Result<Vec<C64>> {
    let n = e.nrows();
    let d = algebra.embedding_factor();
    let mut a = e.clone();
    let mut pivots = Vec::with_capacity(n);
    let scale = e.iter().fold(0.0_f64, |acc, v| acc.max(v.norm())).max(f64::MIN_POSITIVE);
    for k in 0..n {
        let piv = a[(k, k)];
        if !(piv.norm() > 1e-300 * scale) {
            return Err(Error::VanishingMinor);
        }
        pivots.push(piv);
        for i in k + 1..n {
            let f = a[(i, k)] / piv;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for j in k + 1..n {
                let upd = f * a[(k, j)];
                a[(i, j)] -= upd;
            }
        }
    }
    Ok(pivots
        .chunks(d)
        .map(|c| c.iter().map(|p| p.ln()).sum::<C64>() / d as f64)
        .collect())
}

/// `log q_w(E) = sum_i w_i log(|E_i| / |E_{i-1}|)` for a complex matrix
/// in embedded form, where `|E_i|` are leading minors at algebra level.
/// The principal logarithm is taken pivot by pivot, which is continuous on
/// matrices with positive definite real part.
pub fn log_weighted_power_complex(
    algebra: Algebra,
    e: &DMatrix<C64>,
    weights: &[f64],
) -> Result<C64> {
    let m = e.nrows() / algebra.embedding_factor();
    if weights.len() > m {
        return Err(Error::Dimension {
            expected: m,
            found: weights.len(),
        });
    }
    let logs = pivot_logs_complex(algebra, e)?;
    Ok(weights
        .iter()
        .zip(logs.iter())
        .map(|(w, l)| *l * *w)
        .sum())
}
