//! The highest weight vector (generalized power)
//! `q_kappa(A) = |A_m|^{k_m} prod_{i<m} |A_i|^{k_i - k_{i+1}}`, where `A_i`
//! is the leading `i x i` block.

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;
use alloc::vec::Vec;

use crate::algebra::{AlgebraMatrix, HermitianMatrix, PositiveDefiniteMatrix};
use crate::special::Partition;
use crate::{Error, Result};

fn check_len(a: &PositiveDefiniteMatrix, len: usize) -> Result<()> {
    if a.order() != len {
        return Err(Error::Dimension {
            expected: a.order(),
            found: len,
        });
    }
    Ok(())
}

/// `sum_i w_i log(|A_i| / |A_{i-1}|)`, which is `log q_kappa(A)` for
/// `w = kappa` and makes sense for any real weights.
pub fn log_weighted_power(a: &PositiveDefiniteMatrix, weights: &[f64]) -> Result<f64> {
    check_len(a, weights.len())?;
    Ok(a
        .pivot_logs()
        .iter()
        .zip(weights)
        .map(|(l, w)| l * w)
        .sum())
}

/// `log q_kappa(A)`.
pub fn log_highest_weight(a: &PositiveDefiniteMatrix, kappa: &Partition) -> Result<f64> {
    log_weighted_power(a, &kappa.weights())
}

/// `q_kappa(A)`.
pub fn highest_weight_vector(a: &PositiveDefiniteMatrix, kappa: &Partition) -> Result<f64> {
    Ok(log_highest_weight(a, kappa)?.exp())
}

/// `log q_kappa(A^{-1})` without forming the inverse: with `A = R R*`,
/// `R` upper triangular, `q_kappa(A^{-1}) = prod_i r_ii^{-2 k_i}`.
pub fn log_highest_weight_inverse(a: &PositiveDefiniteMatrix, kappa: &Partition) -> Result<f64> {
    check_len(a, kappa.len())?;
    Ok(-a
        .upper_pivot_logs()
        .iter()
        .zip(kappa.weights())
        .map(|(l, w)| l * w)
        .sum::<f64>())
}

/// Relative residuals of the algebraic identities satisfied by `q_kappa`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerIdentityResiduals {
    /// `q_kappa(L) = prod lambda_i^{k_i}` with `L` the diagonal of decreasing
    /// eigenvalues of `A`.
    pub eigen_product: f64,
    /// `q_kappa(L^{-1}) = 1 / q_kappa(L) = q_{-kappa}(L)`; largest of the two
    /// residuals.
    pub inverse: f64,
    /// `q_(p,...,p)(A) = |A|^p` with `p = k_1`.
    pub rectangular: f64,
    /// `q_{kappa+tau}(A) = q_kappa(A) q_tau(A)`.
    pub additive: f64,
    /// `q_{kappa+p}(A) = |A|^p q_kappa(A)` with `p = tau_1`.
    pub shift: f64,
    /// `q_kappa(B A B*) = q_kappa(C) q_kappa(A)` with `C = B B*`.
    pub congruence: f64,
    /// `q_kappa(B^{-1} A B^{-*}) = q_kappa(A) / q_kappa(C)`.
    pub inverse_congruence: f64,
}

impl PowerIdentityResiduals {
    pub fn max(&self) -> f64 {
        self.as_array().iter().fold(0.0, |a, &b| a.max(b))
    }

    pub fn as_array(&self) -> [f64; 7] {
        [
            self.eigen_product,
            self.inverse,
            self.rectangular,
            self.additive,
            self.shift,
            self.congruence,
            self.inverse_congruence,
        ]
    }

    pub const NAMES: [&'static str; 7] = [
        "eigen_product",
        "inverse",
        "rectangular",
        "additive",
        "shift",
        "congruence",
        "inverse_congruence",
    ];
}

/// `|x/y - 1|` from logarithms.
fn rel(log_x: f64, log_y: f64) -> f64 {
    (log_x - log_y).exp_m1().abs()
}

/// Evaluate every identity for `A`, the transform matrix `B` and two
/// partitions. The eigenvalue identities are evaluated on the diagonal
/// matrix of eigenvalues (they fail for a general `A`), and the congruence
/// identities on the lower triangular factor of `B B*` (for a general `B`
/// the leading blocks do not factor).
pub fn power_identity_residuals(
    a: &PositiveDefiniteMatrix,
    b: &AlgebraMatrix,
    kappa: &Partition,
    tau: &Partition,
) -> Result<PowerIdentityResiduals> {
    let algebra = a.algebra();
    let m = a.order();
    check_len(a, kappa.len())?;
    check_len(a, tau.len())?;
    let w = kappa.weights();

    let lambda = a.as_hermitian().eigenvalues();
    let diag = PositiveDefiniteMatrix::diagonal(algebra, &lambda)?;
    let log_eigen: f64 = lambda.iter().zip(&w).map(|(l, k)| k * l.ln()).sum();
    let log_q_diag = log_highest_weight(&diag, kappa)?;
    let eigen_product = rel(log_q_diag, log_eigen);

    let inv_diag_entries: Vec<f64> = lambda.iter().map(|l| 1.0 / l).collect();
    let inv_diag = PositiveDefiniteMatrix::diagonal(algebra, &inv_diag_entries)?;
    let neg: Vec<f64> = w.iter().map(|k| -k).collect();
    let inverse = rel(log_highest_weight(&inv_diag, kappa)?, -log_q_diag)
        .max(rel(log_weighted_power(&diag, &neg)?, -log_q_diag));

    let log_det = a.log_det();
    let log_q = log_highest_weight(a, kappa)?;
    let p = kappa.first();
    let rectangular = rel(
        log_highest_weight(a, &Partition::rectangular(p, m))?,
        p as f64 * log_det,
    );
    let additive = rel(
        log_highest_weight(a, &kappa.add(tau)?)?,
        log_q + log_highest_weight(a, tau)?,
    );
    let p = tau.first();
    let shift = rel(
        log_highest_weight(a, &kappa.add_scalar(p))?,
        p as f64 * log_det + log_q,
    );

    let c = b.gram().positive_definite().map_err(|_| Error::Singular)?;
    let lower = c.cholesky();
    let log_qc = log_highest_weight(&c, kappa)?;
    let y = lower.congruence(a.as_hermitian())?.positive_definite()?;
    let congruence = rel(log_highest_weight(&y, kappa)?, log_qc + log_q);
    let lower_inv = lower.inverse()?;
    let z: HermitianMatrix = lower_inv.congruence(a.as_hermitian())?;
    let inverse_congruence = rel(
        log_highest_weight(&z.positive_definite()?, kappa)?,
        log_q - log_qc,
    );

    Ok(PowerIdentityResiduals {
        eigen_product,
        inverse,
        rectangular,
        additive,
        shift,
        congruence,
        inverse_congruence,
    })
}
