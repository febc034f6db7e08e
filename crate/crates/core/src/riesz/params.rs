use core::fmt;

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;

use crate::algebra::{Algebra, HermitianMatrix, PositiveDefiniteMatrix};
use crate::special::{
    check_weighted_domain, log_highest_weight, log_highest_weight_inverse, Partition, WeightSign,
};
use crate::{Error, Result};

/// Which of the two Riesz families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Density proportional to `etr(-S^-1 X) |X|^c q_kappa(X)`.
    TypeI,
    /// Density proportional to `etr(-S^-1 X) |X|^c q_kappa(X^-1)`.
    TypeII,
}

impl Variant {
    pub fn weight_sign(self) -> WeightSign {
        match self {
            Variant::TypeI => WeightSign::Positive,
            Variant::TypeII => WeightSign::Negative,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::TypeI => "I",
            Variant::TypeII => "II",
        })
    }
}

/// The scale parameter: a multiple of the identity (available for every
/// algebra) or a general positive definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Scale {
    Isotropic(f64),
    Matrix(PositiveDefiniteMatrix),
}

/// A fully validated distribution: variant, algebra, shape `a`, weight
/// `kappa` (whose length is the order `m`) and scale.
#[derive(Debug, Clone, PartialEq)]
pub struct RieszParams {
    variant: Variant,
    algebra: Algebra,
    a: f64,
    kappa: Partition,
    scale: Scale,
    sigma_inv: Option<PositiveDefiniteMatrix>,
    log_det_sigma: f64,
    log_q_sigma: f64,
    log_q_sigma_inv: f64,
}

impl RieszParams {
    pub fn new(variant: Variant, algebra: Algebra, a: f64, kappa: Partition, scale: Scale) -> Result<Self> {
        let m = kappa.len();
        if m == 0 {
            return Err(Error::InvalidArgument("kappa must have length m >= 1".into()));
        }
        if !a.is_finite() {
            return Err(Error::InvalidArgument(alloc::format!("a = {a} is not finite")));
        }
        check_weighted_domain(algebra, a, &kappa, variant.weight_sign())?;
        let (sigma_inv, log_det_sigma, log_q_sigma, log_q_sigma_inv) = match &scale {
            Scale::Isotropic(s) => {
                if !(*s > 0.0 && s.is_finite()) {
                    return Err(Error::NotPositiveDefinite);
                }
                let k = kappa.weight() as f64;
                (None, m as f64 * s.ln(), k * s.ln(), -k * s.ln())
            }
            Scale::Matrix(sigma) => {
                if sigma.algebra() != algebra {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "scale is {} but the distribution is {algebra}",
                        sigma.algebra()
                    )));
                }
                if sigma.order() != m {
                    return Err(Error::Dimension {
                        expected: m,
                        found: sigma.order(),
                    });
                }
                (
                    Some(sigma.inverse()),
                    sigma.log_det(),
                    log_highest_weight(sigma, &kappa)?,
                    log_highest_weight_inverse(sigma, &kappa)?,
                )
            }
        };
        Ok(RieszParams {
            variant,
            algebra,
            a,
            kappa,
            scale,
            sigma_inv,
            log_det_sigma,
            log_q_sigma,
            log_q_sigma_inv,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn kappa(&self) -> &Partition {
        &self.kappa
    }

    pub fn order(&self) -> usize {
        self.kappa.len()
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    /// The exponent `c = a - (m-1)beta/2 - 1` of `|X|`.
    pub fn det_exponent(&self) -> f64 {
        self.a - (self.order() as f64 - 1.0) * self.algebra.beta_f64() / 2.0 - 1.0
    }

    /// `Some(s)` when the scale is `s I`, whichever way it was given.
    pub fn isotropic_scale(&self) -> Option<f64> {
        match &self.scale {
            Scale::Isotropic(s) => Some(*s),
            Scale::Matrix(s) => s.as_hermitian().as_scalar(),
        }
    }

    /// The scale as a matrix (not available for octonions).
    pub fn sigma(&self) -> Result<PositiveDefiniteMatrix> {
        match &self.scale {
            Scale::Isotropic(s) => PositiveDefiniteMatrix::scalar(self.algebra, self.order(), *s),
            Scale::Matrix(s) => Ok(s.clone()),
        }
    }

    pub fn sigma_inverse(&self) -> Result<PositiveDefiniteMatrix> {
        match (&self.scale, &self.sigma_inv) {
            (_, Some(inv)) => Ok(inv.clone()),
            (Scale::Isotropic(s), None) => PositiveDefiniteMatrix::scalar(self.algebra, self.order(), 1.0 / s),
            (Scale::Matrix(s), None) => Ok(s.inverse()),
        }
    }

    /// `tr(S^-1 X)`.
    pub fn trace_sigma_inv(&self, x: &HermitianMatrix) -> Result<f64> {
        match (&self.scale, &self.sigma_inv) {
            (_, Some(inv)) => inv.as_hermitian().trace_product(x),
            (Scale::Isotropic(s), None) => Ok(x.trace() / s),
            (Scale::Matrix(s), None) => s.inverse().as_hermitian().trace_product(x),
        }
    }

    pub fn log_det_sigma(&self) -> f64 {
        self.log_det_sigma
    }

    pub fn log_q_sigma(&self) -> f64 {
        self.log_q_sigma
    }

    pub fn log_q_sigma_inverse(&self) -> f64 {
        self.log_q_sigma_inv
    }

    pub(crate) fn check_matrix(&self, algebra: Algebra, order: usize) -> Result<()> {
        if algebra != self.algebra {
            return Err(Error::InvalidArgument(alloc::format!(
                "matrix is {algebra} but the distribution is {}",
                self.algebra
            )));
        }
        if order != self.order() {
            return Err(Error::Dimension {
                expected: self.order(),
                found: order,
            });
        }
        Ok(())
    }
}
