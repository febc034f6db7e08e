//! Two-argument hypergeometric series
//! `0F0(A, B) = sum_k sum_{kappa |- k} C_kappa(a) C_kappa(b) / (k! C_kappa(1^m))`
//! on eigenvalues `a`, `b`.

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;
use alloc::vec::Vec;

use super::gamma::log_gamma;
use super::jack::{log_jack_at_ones, JackTable};
use crate::algebra::Algebra;
use crate::{Error, Result};

/// Whether to translate an argument before summing: `0F0(A + sI, B) =
/// e^{s tr B} 0F0(A, B)`, so a negative argument can be moved to the
/// non-negative orthant where every term is non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ShiftPolicy {
    None,
    #[default]
    Auto,
}

/// Truncation policy for the Jack series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Largest total degree summed.
    pub max_degree: usize,
    /// Stop once the estimated tail is below `rel_tol` times the sum.
    pub rel_tol: f64,
    /// Return an error, not a best effort value, when `max_degree` is
    /// reached first.
    pub hard_fail: bool,
    pub shift: ShiftPolicy,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_degree: 30,
            rel_tol: 1e-8,
            hard_fail: true,
            shift: ShiftPolicy::Auto,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// A summed series: `value = sign * exp(log_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub log_abs: f64,
    pub sign: f64,
    /// Highest degree included.
    pub degree: usize,
    /// Estimated absolute tail relative to `|value|`.
    pub rel_tail: f64,
}

impl SeriesValue {
    pub fn value(&self) -> f64 {
        self.sign * self.log_abs.exp()
    }
}

/// The `a` side of the series, reusable across many `b`.
#[derive(Debug, Clone)]
pub struct PreparedHypergeom {
    algebra: Algebra,
    ctrl: SeriesControl,
    shift: f64,
    trace: f64,
    table: JackTable,
    log_ones: Vec<Vec<f64>>,
}

fn min_shift(x: &[f64], policy: ShiftPolicy) -> f64 {
    match policy {
        ShiftPolicy::None => 0.0,
        ShiftPolicy::Auto => {
            let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
            if lo < 0.0 {
                -lo
            } else {
                0.0
            }
        }
    }
}

impl PreparedHypergeom {
    pub fn new(algebra: Algebra, a: &[f64], ctrl: SeriesControl) -> Result<Self> {
        ctrl.validate()?;
        let shift = min_shift(a, ctrl.shift);
        let shifted: Vec<f64> = a.iter().map(|v| v + shift).collect();
        let m = a.len();
        let table = JackTable::new(algebra, &shifted, ctrl.max_degree);
        let log_ones = (0..=ctrl.max_degree)
            .map(|k| {
                table
                    .degree(k)
                    .iter()
                    .map(|(kappa, _)| log_jack_at_ones(algebra, kappa, m))
                    .collect()
            })
            .collect();
        Ok(PreparedHypergeom {
            algebra,
            ctrl,
            shift,
            trace: shifted.iter().sum(),
            table,
            log_ones,
        })
    }

    /// `log 0F0(a, b)` (the function is positive; a negative partial sum
    /// means the truncation failed and is reported as such).
    pub fn log_eval(&self, b: &[f64]) -> Result<SeriesValue> {
        if b.len() != self.table.vars() {
            return Err(Error::Dimension {
                expected: self.table.vars(),
                found: b.len(),
            });
        }
        let b_shift = min_shift(b, self.ctrl.shift);
        let b_shifted: Vec<f64> = b.iter().map(|v| v + b_shift).collect();
        let tb = JackTable::new(self.algebra, &b_shifted, self.ctrl.max_degree);
        // 0F0(a, b) = e^{-s tr b} 0F0(a + s, b) and
        // 0F0(a + s, b) = e^{-t tr(a + s)} 0F0(a + s, b + t).
        let prefactor = -self.shift * b.iter().sum::<f64>() - b_shift * self.trace;
        let log_sa = self.table.scale().ln();
        let log_sb = tb.scale().ln();

        let mut terms: Vec<(f64, f64)> = Vec::new();
        let mut result = None;
        let mut last_mag = f64::NEG_INFINITY;
        let mut prev_mag = f64::NEG_INFINITY;
        for k in 0..=self.ctrl.max_degree {
            let mut acc = 0.0;
            for (idx, ((ka, ca), (kb, cb))) in self.table.degree(k).iter().zip(tb.degree(k)).enumerate() {
                debug_assert_eq!(ka, kb);
                acc += ca * cb * (-self.log_ones[k][idx]).exp();
            }
            let log_mag = if acc == 0.0 {
                f64::NEG_INFINITY
            } else if k == 0 {
                acc.abs().ln()
            } else {
                acc.abs().ln() + k as f64 * (log_sa + log_sb) - log_gamma(k as f64 + 1.0)
            };
            terms.push((log_mag, acc.signum()));
            prev_mag = last_mag;
            last_mag = log_mag;
            if k >= 2 {
                let (sum_log, sign) = signed_log_sum(&terms);
                let tail = tail_estimate(prev_mag, last_mag);
                let rel_tail = (tail - sum_log).exp();
                if sign > 0.0 && rel_tail <= self.ctrl.rel_tol {
                    result = Some(SeriesValue {
                        log_abs: sum_log + prefactor,
                        sign,
                        degree: k,
                        rel_tail,
                    });
                    break;
                }
            }
        }
        if let Some(v) = result {
            return Ok(v);
        }
        let (sum_log, sign) = signed_log_sum(&terms);
        let rel_tail = (tail_estimate(prev_mag, last_mag) - sum_log).exp();
        if self.ctrl.hard_fail || sign <= 0.0 {
            return Err(Error::Truncation {
                partial_log: sum_log + prefactor,
                degree: self.ctrl.max_degree,
                tail: rel_tail,
            });
        }
        Ok(SeriesValue {
            log_abs: sum_log + prefactor,
            sign,
            degree: self.ctrl.max_degree,
            rel_tail,
        })
    }
}

/// Log of the geometric tail bound `|T_k| r / (1 - r)` with
/// `r = |T_k / T_{k-1}|`; infinite if the terms are not decreasing.
fn tail_estimate(prev: f64, last: f64) -> f64 {
    if last == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let log_r = last - prev;
    if !(log_r < 0.0) {
        return f64::INFINITY;
    }
    last + log_r - (-log_r.exp()).ln_1p()
}

fn signed_log_sum(terms: &[(f64, f64)]) -> (f64, f64) {
    let top = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return (f64::NEG_INFINITY, 0.0);
    }
    let s: f64 = terms.iter().map(|(l, sg)| sg * (l - top).exp()).sum();
    (s.abs().ln() + top, s.signum())
}

/// `0F0(a, b)` with the given control, as `log` plus diagnostics.
pub fn hypergeom_0f0_two(
    algebra: Algebra,
    a: &[f64],
    b: &[f64],
    ctrl: &SeriesControl,
) -> Result<SeriesValue> {
    PreparedHypergeom::new(algebra, a, *ctrl)?.log_eval(b)
}

/// `log 0F1(; b; z) = log sum_j z^j / ((b)_j j!)` for `z >= 0`, `b > 0`.
pub fn log_hypergeom_0f1(b: f64, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    // Terms rise until j ~ sqrt(z); sum in log space around the peak.
    let log_z = z.ln();
    let mut log_t = 0.0;
    let mut terms = alloc::vec![0.0];
    let mut j = 0.0;
    loop {
        log_t += log_z - (b + j).ln() - (j + 1.0).ln();
        j += 1.0;
        terms.push(log_t);
        if j * j > z && log_t < terms.iter().copied().fold(f64::NEG_INFINITY, f64::max) - 40.0 {
            break;
        }
    }
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln()
}
