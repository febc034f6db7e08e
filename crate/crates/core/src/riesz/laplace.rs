use super::params::{RieszParams, Scale};
use crate::algebra::Algebra;
use crate::special::{log_highest_weight, log_highest_weight_inverse, log_mv_gamma_weighted, Partition, WeightSign};
use crate::{Error, Result};

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;

/// Closed form of the Laplace-type integrals over the cone:
///
/// * `+`: `int etr(-S^-1 A) |A|^c q_kappa(A) dA = Gamma_m[a, kappa] |S|^a q_kappa(S)`;
/// * `-`: `int etr(-S^-1 A) |A|^c q_kappa(A^-1) dA = Gamma_m[a, -kappa] |S|^a q_kappa(S^-1)`,
///
/// returned as a logarithm, with `c = a - (m-1)beta/2 - 1`.
pub fn log_laplace_integral(
    algebra: Algebra,
    a: f64,
    kappa: &Partition,
    scale: &Scale,
    sign: WeightSign,
) -> Result<f64> {
    let m = kappa.len();
    let log_gamma = log_mv_gamma_weighted(algebra, a, kappa, sign)?;
    let (log_det, log_q) = match scale {
        Scale::Isotropic(s) => {
            if !(*s > 0.0) {
                return Err(Error::NotPositiveDefinite);
            }
            let k = kappa.weight() as f64;
            let q = match sign {
                WeightSign::Positive => k * s.ln(),
                WeightSign::Negative => -k * s.ln(),
            };
            (m as f64 * s.ln(), q)
        }
        Scale::Matrix(sigma) => {
            let q = match sign {
                WeightSign::Positive => log_highest_weight(sigma, kappa)?,
                WeightSign::Negative => log_highest_weight_inverse(sigma, kappa)?,
            };
            (sigma.log_det(), q)
        }
    };
    Ok(log_gamma + a * log_det + log_q)
}

impl RieszParams {
    /// Logarithm of the normalizing constant of the density.
    pub fn log_normalizer(&self) -> f64 {
        let sign = self.variant().weight_sign();
        let log_q = match sign {
            WeightSign::Positive => self.log_q_sigma(),
            WeightSign::Negative => self.log_q_sigma_inverse(),
        };
        log_mv_gamma_weighted(self.algebra(), self.a(), self.kappa(), sign)
            .expect("the domain was checked at construction")
            + self.a() * self.log_det_sigma()
            + log_q
    }
}
