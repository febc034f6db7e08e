//! Joint density of the ordered eigenvalues `l_1 > ... > l_m`.
//!
//! Writing `X = H L H*` with `H` Haar distributed on the unitary group of
//! the algebra,
//!
//! `f(l) = K / N * prod_{i<j} (l_i - l_j)^beta * prod_i l_i^c * Phi(l)`,
//! `Phi(l) = int etr(-S^-1 H L H*) q(H L^{+-1} H*) dH`,
//!
//! where `N` is the normalizing constant of the matrix density, `q` is
//! `q_kappa` and the sign is `+` for Type I and `-` for Type II. `Phi` is
//! available in closed form when `S` is isotropic, as a `0F0` series when
//! `kappa` is rectangular, and by one-dimensional quadrature when `m = 2`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;

use super::params::{RieszParams, Variant};
use crate::algebra::{Algebra, Spectrum};
use crate::quadrature::GaussLegendre;
use crate::special::{
    jack_polynomial, log_gamma, log_hypergeom_0f1, log_jack_at_ones, log_mv_gamma, PreparedHypergeom,
    SeriesControl,
};
use crate::{Error, Result};

/// Nodes of the angular rule used for `m = 2`.
pub const HAAR_NODES: usize = 128;

/// How to evaluate the angular integral `Phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EigenRoute {
    /// Closed form if the scale is isotropic, else quadrature for `m = 2`,
    /// else the series for rectangular `kappa`.
    #[default]
    Auto,
    /// `etr(-L/s) C_kappa(L^{+-1}) / C_kappa(I)`; isotropic scale only.
    ClosedForm,
    /// `0F0(-S^-1, L)` times the weight factor; needs an isotropic scale or
    /// a rectangular `kappa`.
    Series,
    /// Quadrature over the angle between the first eigenvector and the
    /// coordinate axes; `m = 2` only.
    Haar,
}

/// `log K` in `(dX) = K prod_{i<j}(l_i - l_j)^beta (dL)(dH)` with `dH`
/// normalized Haar measure:
/// `K = pi^{m^2 beta/2} / Gamma_m[m beta/2] * (Gamma(beta/2) / pi^{beta/2})^m`.
pub fn log_eigen_measure_constant(algebra: Algebra, m: usize) -> f64 {
    let beta = algebra.beta_f64();
    let mf = m as f64;
    mf * mf * beta / 2.0 * PI.ln()
        - log_mv_gamma(algebra, m, mf * beta / 2.0).expect("m beta/2 exceeds (m-1) beta/2")
        + mf * (log_gamma(beta / 2.0) - beta / 2.0 * PI.ln())
}

#[derive(Debug, Clone)]
enum Angular {
    Closed { s: f64 },
    SeriesIsotropic { hyper: PreparedHypergeom },
    SeriesRectangular { p: f64, hyper: PreparedHypergeom },
    Haar(HaarRule),
}

#[derive(Debug, Clone)]
struct HaarRule {
    nodes: Vec<(f64, f64)>,
    p11: f64,
    p22: f64,
    p12: f64,
}

/// A prepared eigenvalue density for one parameter set.
#[derive(Debug, Clone)]
pub struct EigenDensity {
    params: RieszParams,
    log_const: f64,
    angular: Angular,
}

fn signed(variant: Variant, lambda: &[f64]) -> Vec<f64> {
    match variant {
        Variant::TypeI => lambda.to_vec(),
        Variant::TypeII => lambda.iter().map(|l| 1.0 / l).collect(),
    }
}

impl EigenDensity {
    pub fn new(params: &RieszParams, route: EigenRoute, ctrl: &SeriesControl) -> Result<Self> {
        let m = params.order();
        let iso = params.isotropic_scale();
        let rect = params.kappa().rectangular_part();
        let route = match route {
            EigenRoute::Auto if iso.is_some() => EigenRoute::ClosedForm,
            EigenRoute::Auto if m == 2 => EigenRoute::Haar,
            EigenRoute::Auto if rect.is_some() => EigenRoute::Series,
            EigenRoute::Auto => {
                return Err(Error::Unsupported(
                    "eigenvalue density for m > 2 with a non-isotropic scale needs a rectangular kappa",
                ))
            }
            r => r,
        };
        let algebra = params.algebra();
        let angular = match route {
            EigenRoute::ClosedForm => Angular::Closed {
                s: iso.ok_or(Error::Unsupported("the closed form needs an isotropic scale"))?,
            },
            EigenRoute::Series => {
                if let Some(s) = iso {
                    let hyper = PreparedHypergeom::new(algebra, &alloc::vec![-1.0 / s; m], *ctrl)?;
                    Angular::SeriesIsotropic { hyper }
                } else if let Some(p) = rect {
                    let inv = params.sigma_inverse()?;
                    let a: Vec<f64> = inv.as_hermitian().eigenvalues().iter().map(|v| -v).collect();
                    let hyper = PreparedHypergeom::new(algebra, &a, *ctrl)?;
                    let p = match params.variant() {
                        Variant::TypeI => p as f64,
                        Variant::TypeII => -(p as f64),
                    };
                    Angular::SeriesRectangular { p, hyper }
                } else {
                    return Err(Error::Unsupported(
                        "the series needs an isotropic scale or a rectangular kappa",
                    ));
                }
            }
            EigenRoute::Haar => {
                if m != 2 {
                    return Err(Error::Unsupported("the angular quadrature is implemented for m = 2"));
                }
                let (p11, p22, p12) = match iso {
                    Some(s) => (1.0 / s, 1.0 / s, 0.0),
                    None => {
                        let inv = params.sigma_inverse()?;
                        let h = inv.as_hermitian();
                        (h.entry(0, 0).w, h.entry(1, 1).w, h.entry(1, 0).norm_sqr().sqrt())
                    }
                };
                let beta = algebra.beta_f64();
                let log_z = 0.5 * PI.ln() + log_gamma(beta / 2.0) - log_gamma((beta + 1.0) / 2.0);
                let gl = GaussLegendre::new(HAAR_NODES);
                let nodes = gl
                    .on(0.0, PI)
                    .map(|(t, w)| (t, w.ln() + (beta - 1.0) * t.sin().ln() - log_z))
                    .collect();
                Angular::Haar(HaarRule { nodes, p11, p22, p12 })
            }
            EigenRoute::Auto => unreachable!(),
        };
        Ok(EigenDensity {
            params: params.clone(),
            log_const: log_eigen_measure_constant(algebra, m) - params.log_normalizer(),
            angular,
        })
    }

    pub fn params(&self) -> &RieszParams {
        &self.params
    }

    /// `log Phi(l)` for decreasing positive `l`.
    pub fn log_angular(&self, lambda: &[f64]) -> Result<f64> {
        let params = &self.params;
        let kappa = params.kappa();
        let algebra = params.algebra();
        let m = lambda.len();
        let weight_part = || -> f64 {
            if kappa.is_zero() {
                return 0.0;
            }
            let arg = signed(params.variant(), lambda);
            jack_polynomial(algebra, kappa.parts(), &arg).ln() - log_jack_at_ones(algebra, kappa.parts(), m)
        };
        Ok(match &self.angular {
            Angular::Closed { s } => -lambda.iter().sum::<f64>() / s + weight_part(),
            Angular::SeriesIsotropic { hyper, .. } => hyper.log_eval(lambda)?.log_abs + weight_part(),
            Angular::SeriesRectangular { p, hyper } => {
                p * lambda.iter().map(|l| l.ln()).sum::<f64>() + hyper.log_eval(lambda)?.log_abs
            }
            Angular::Haar(rule) => self.haar(rule, lambda),
        })
    }

    fn haar(&self, rule: &HaarRule, lambda: &[f64]) -> f64 {
        let params = &self.params;
        let beta = params.algebra().beta_f64();
        let (l1, l2) = (lambda[0], lambda[1]);
        let delta = l1 - l2;
        let k = params.kappa().parts();
        let (k1, k2) = (k[0] as f64, k[1] as f64);
        let base = -l2 * (rule.p11 + rule.p22);
        let mut logs = Vec::with_capacity(rule.nodes.len());
        for &(theta, log_w) in &rule.nodes {
            let c1 = (theta / 2.0).cos().powi(2);
            let c2 = 1.0 - c1;
            let s = delta * rule.p12 * theta.sin();
            let log_q = match params.variant() {
                Variant::TypeI => (k1 - k2) * (l2 + delta * c1).ln() + k2 * (l1 * l2).ln(),
                Variant::TypeII => {
                    (k1 - k2) * (1.0 / l2 + (1.0 / l1 - 1.0 / l2) * c1).ln() - k2 * (l1 * l2).ln()
                }
            };
            let log_q = if k1 == 0.0 { 0.0 } else { log_q };
            logs.push(
                log_w + base - delta * (rule.p11 * c1 + rule.p22 * c2)
                    + log_hypergeom_0f1(beta / 2.0, s * s / 4.0)
                    + log_q,
            );
        }
        let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln()
    }

    /// Log-density at decreasing eigenvalues; `-inf` on ties.
    pub fn log_density_values(&self, lambda: &[f64]) -> Result<f64> {
        let m = self.params.order();
        if lambda.len() != m {
            return Err(Error::Dimension {
                expected: m,
                found: lambda.len(),
            });
        }
        if lambda.iter().any(|&l| !(l > 0.0)) || lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpectrum("eigenvalues must be positive and decreasing".into()));
        }
        let beta = self.params.algebra().beta_f64();
        let mut vdm = 0.0;
        for i in 0..m {
            for j in i + 1..m {
                vdm += (lambda[i] - lambda[j]).ln();
            }
        }
        if vdm == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        let log_det: f64 = lambda.iter().map(|l| l.ln()).sum();
        Ok(self.log_const + beta * vdm + self.params.det_exponent() * log_det + self.log_angular(lambda)?)
    }

    pub fn log_density(&self, spectrum: &Spectrum) -> Result<f64> {
        if spectrum.algebra() != self.params.algebra() {
            return Err(Error::InvalidArgument(alloc::format!(
                "spectrum is {} but the distribution is {}",
                spectrum.algebra(),
                self.params.algebra()
            )));
        }
        self.log_density_values(spectrum.values())
    }
}

impl RieszParams {
    pub fn eigen_density(&self, route: EigenRoute, ctrl: &SeriesControl) -> Result<EigenDensity> {
        EigenDensity::new(self, route, ctrl)
    }

    /// One-shot evaluation; prefer [`RieszParams::eigen_density`] for many
    /// spectra.
    pub fn log_eigen_density(&self, spectrum: &Spectrum, route: EigenRoute, ctrl: &SeriesControl) -> Result<f64> {
        self.eigen_density(route, ctrl)?.log_density(spectrum)
    }
}
