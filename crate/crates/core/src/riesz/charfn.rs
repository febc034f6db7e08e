use nalgebra::DMatrix;

use super::params::{RieszParams, Variant};
use crate::algebra::{log_det_identity_minus_i, log_weighted_power_complex, HermitianMatrix};
use crate::{Error, Result, C64};

impl RieszParams {
    /// `E etr(i T X)` on the principal branch.
    ///
    /// With `S = L L*` (`L` lower) and `S = R R*` (`R` upper):
    ///
    /// * Type I: `|I - i L*TL|^{-a} q_kappa((I - i L*TL)^{-1})`;
    /// * Type II: `|I - i R*TR|^{-a} q_kappa(I - i R*TR)`.
    ///
    /// For a diagonal scale both factors reduce to the symmetric root
    /// `S^{1/2} T S^{1/2}`; for a general scale the triangular factors are
    /// required because `q_kappa` is not unitarily invariant.
    pub fn log_char_fn(&self, t: &HermitianMatrix) -> Result<C64> {
        self.check_matrix(t.algebra(), t.order())?;
        let sigma = self.sigma()?;
        let factor = match self.variant() {
            Variant::TypeI => sigma.cholesky(),
            Variant::TypeII => sigma.upper_cholesky(),
        };
        let h = factor.adjoint().congruence(t)?;
        let log_det = log_det_identity_minus_i(&h);
        let e = h.embedding();
        let n = e.nrows();
        let m_mat: DMatrix<C64> = DMatrix::identity(n, n) - e * C64::new(0.0, 1.0);
        let weights = self.kappa().weights();
        let log_q = if self.kappa().is_zero() {
            C64::new(0.0, 0.0)
        } else {
            match self.variant() {
                Variant::TypeI => {
                    let inv = m_mat.try_inverse().ok_or(Error::Singular)?;
                    log_weighted_power_complex(self.algebra(), &inv, &weights)?
                }
                Variant::TypeII => log_weighted_power_complex(self.algebra(), &m_mat, &weights)?,
            }
        };
        Ok(log_det * (-self.a()) + log_q)
    }

    pub fn char_fn(&self, t: &HermitianMatrix) -> Result<C64> {
        Ok(self.log_char_fn(t)?.exp())
    }
}
