#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;
use crate::algebra::Algebra;
use crate::special::Partition;
use crate::{Error, Result};

use core::f64::consts::PI;

/// Which weighted gamma function: `+kappa` integrates `q_kappa(A)`, `-kappa`
/// integrates `q_kappa(A^-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightSign {
    Positive,
    Negative,
}

/// `log Gamma(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

fn log_pi_power(beta: f64, m: usize) -> f64 {
    let m = m as f64;
    m * (m - 1.0) * beta / 4.0 * PI.ln()
}

/// `log Gamma_m^beta[a] = m(m-1)beta/4 log pi + sum_i log Gamma(a - (i-1)beta/2)`
/// for `a > (m-1)beta/2`.
pub fn log_mv_gamma(algebra: Algebra, m: usize, a: f64) -> Result<f64> {
    let beta = algebra.beta_f64();
    let bound = (m as f64 - 1.0) * beta / 2.0;
    if !(a > bound) {
        return Err(Error::Domain {
            parameter: "a",
            value: a,
            bound,
            rule: "(m-1)beta/2",
        });
    }
    let mut acc = log_pi_power(beta, m);
    for i in 0..m {
        acc += log_gamma(a - i as f64 * beta / 2.0);
    }
    Ok(acc)
}

/// Domain bound on `a` for the weighted gamma function of the given sign.
pub fn weighted_gamma_bound(algebra: Algebra, kappa: &Partition, sign: WeightSign) -> f64 {
    let base = (kappa.len() as f64 - 1.0) * algebra.beta_f64() / 2.0;
    match sign {
        WeightSign::Positive => base - kappa.last() as f64,
        WeightSign::Negative => base + kappa.first() as f64,
    }
}

pub(crate) fn check_weighted_domain(
    algebra: Algebra,
    a: f64,
    kappa: &Partition,
    sign: WeightSign,
) -> Result<()> {
    let bound = weighted_gamma_bound(algebra, kappa, sign);
    if a > bound {
        Ok(())
    } else {
        Err(Error::Domain {
            parameter: "a",
            value: a,
            bound,
            rule: match sign {
                WeightSign::Positive => "(m-1)beta/2 - k_m",
                WeightSign::Negative => "(m-1)beta/2 + k_1",
            },
        })
    }
}

/// `log Gamma_m^beta[a, +-kappa]` with `m = kappa.len()`:
///
/// * `+kappa`: `pi^{m(m-1)beta/4} prod_i Gamma(a + k_i - (i-1)beta/2)`;
/// * `-kappa`: `pi^{m(m-1)beta/4} prod_i Gamma(a - k_i - (m-i)beta/2)`.
pub fn log_mv_gamma_weighted(
    algebra: Algebra,
    a: f64,
    kappa: &Partition,
    sign: WeightSign,
) -> Result<f64> {
    check_weighted_domain(algebra, a, kappa, sign)?;
    let beta = algebra.beta_f64();
    let m = kappa.len();
    let mut acc = log_pi_power(beta, m);
    for (i, &k) in kappa.parts().iter().enumerate() {
        let k = k as f64;
        acc += log_gamma(match sign {
            WeightSign::Positive => a + k - i as f64 * beta / 2.0,
            WeightSign::Negative => a - k - (m - 1 - i) as f64 * beta / 2.0,
        });
    }
    Ok(acc)
}

/// Generalized Pochhammer symbol `[a]_kappa = prod_i (a - (i-1)beta/2)_{k_i}`.
pub fn gen_pochhammer(algebra: Algebra, a: f64, kappa: &Partition) -> f64 {
    let beta = algebra.beta_f64();
    let mut acc = 1.0;
    for (i, &k) in kappa.parts().iter().enumerate() {
        let base = a - i as f64 * beta / 2.0;
        for j in 0..k {
            acc *= base + j as f64;
        }
    }
    acc
}

/// `(log |[a]_kappa|, sign)`, with sign 0 when a factor vanishes.
pub fn log_gen_pochhammer_signed(algebra: Algebra, a: f64, kappa: &Partition) -> (f64, f64) {
    let beta = algebra.beta_f64();
    let (mut log, mut sign) = (0.0, 1.0);
    for (i, &k) in kappa.parts().iter().enumerate() {
        let base = a - i as f64 * beta / 2.0;
        for j in 0..k {
            let f = base + j as f64;
            if f == 0.0 {
                return (f64::NEG_INFINITY, 0.0);
            }
            log += f.abs().ln();
            if f < 0.0 {
                sign = -sign;
            }
        }
    }
    (log, sign)
}
