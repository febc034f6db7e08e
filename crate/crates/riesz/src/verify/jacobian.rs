//! Analytic log-Jacobians of `X -> A X A*` and `S -> S^-1` against central
//! finite differences of the realified maps.

use nalgebra::DMatrix;
use riesz_core::algebra::{Algebra, AlgebraMatrix, HermitianMatrix, PositiveDefiniteMatrix};
use riesz_core::riesz::{log_jacobian_congruence, log_jacobian_inverse};
use riesz_core::sampler::{gaussian_hermitian, gaussian_matrix};
use riesz_core::{Error, Result};

use super::{substream, well_conditioned};
use crate::report::{Comparison, VerificationReport};

const STEP: f64 = 1e-5;
const RETRIES: usize = 20;

/// `log |det dF|` at `x` in realified coordinates.
fn numeric_log_jacobian(
    algebra: Algebra,
    m: usize,
    x: &HermitianMatrix,
    f: impl Fn(&HermitianMatrix) -> Result<HermitianMatrix>,
) -> Result<f64> {
    let base = x.realified();
    let n = base.len();
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let h = STEP * base[k].abs().max(1.0);
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[k] += h;
        minus[k] -= h;
        let fp = f(&HermitianMatrix::from_realified(algebra, m, &plus)?)?.realified();
        let fm = f(&HermitianMatrix::from_realified(algebra, m, &minus)?)?.realified();
        for r in 0..n {
            jac[(r, k)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    Ok(jac.determinant().abs().ln())
}

/// Finite-difference `log |det|` of `X -> A X A*`, taken at `X = I`.
pub fn numeric_log_jacobian_congruence(a: &AlgebraMatrix) -> Result<f64> {
    let x = HermitianMatrix::identity(a.algebra(), a.order())?;
    numeric_log_jacobian(a.algebra(), a.order(), &x, |y| a.congruence(y))
}

/// Finite-difference `log |det|` of `S -> S^-1` at `s`.
pub fn numeric_log_jacobian_inverse(s: &PositiveDefiniteMatrix) -> Result<f64> {
    numeric_log_jacobian(s.algebra(), s.order(), s.as_hermitian(), |y| y.inverse())
}

/// Largest absolute error over `trials` random congruences and inversions.
pub fn verify_jacobians(algebra: Algebra, m: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if m > 3 {
        return Err(Error::Unsupported("Jacobian differencing is limited to m <= 3"));
    }
    let mut worst_congruence: f64 = 0.0;
    let mut worst_inverse: f64 = 0.0;
    for trial in 0..trials {
        let mut rng = substream(seed, trial as u64);
        let mut a = gaussian_matrix(algebra, m, &mut rng)?;
        let mut tries = 0;
        while !well_conditioned(&a) {
            tries += 1;
            if tries > RETRIES {
                return Err(Error::Singular);
            }
            a = gaussian_matrix(algebra, m, &mut rng)?;
        }
        let x = gaussian_hermitian(algebra, m, 1.0, &mut rng)?;
        let analytic = log_jacobian_congruence(&a)?;
        let numeric = numeric_log_jacobian(algebra, m, &x, |y| a.congruence(y))?;
        worst_congruence = worst_congruence.max((analytic - numeric).abs());

        let g = gaussian_matrix(algebra, m, &mut rng)?;
        let s = g
            .gram()
            .scale(1.0 / m as f64)
            .add(&HermitianMatrix::scalar(algebra, m, 0.5)?)?;
        let pd = PositiveDefiniteMatrix::new(s.clone())?;
        let analytic = log_jacobian_inverse(&pd);
        let numeric = numeric_log_jacobian(algebra, m, &s, |y| y.inverse())?;
        worst_inverse = worst_inverse.max((analytic - numeric).abs());
    }
    Ok(VerificationReport::new(
        format!("jacobians[beta={},m={m}]", algebra.beta()),
        worst_congruence.max(worst_inverse),
        1e-5,
        Comparison::Below,
        trials as u64,
    )
    .with_detail(format!("congruence={worst_congruence:.3e} inverse={worst_inverse:.3e}")))
}
