use super::params::{RieszParams, Variant};
use crate::algebra::PositiveDefiniteMatrix;
use crate::special::{log_highest_weight, log_highest_weight_inverse};
use crate::Result;

impl RieszParams {
    /// Log-density at `X` with respect to Lebesgue measure on the real
    /// coordinates of the Hermitian matrices.
    pub fn log_density(&self, x: &PositiveDefiniteMatrix) -> Result<f64> {
        self.check_matrix(x.algebra(), x.order())?;
        let log_q = match self.variant() {
            Variant::TypeI => log_highest_weight(x, self.kappa())?,
            Variant::TypeII => log_highest_weight_inverse(x, self.kappa())?,
        };
        Ok(-self.log_normalizer() - self.trace_sigma_inv(x.as_hermitian())?
            + self.det_exponent() * x.log_det()
            + log_q)
    }
}
