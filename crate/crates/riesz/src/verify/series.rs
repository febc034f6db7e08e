//! Series-engine checks: the single-variable reduction of `0F0` and the
//! normalization of the C-normalized Jack polynomials.

use rand::Rng;
use riesz_core::algebra::Algebra;
use riesz_core::special::{hypergeom_0f0_two, JackTable, SeriesControl};
use riesz_core::Result;

use super::{rel_from_log, substream};
use crate::report::{Comparison, VerificationReport};

/// `0F0(a, b) = e^{ab}` for `m = 1` over a fixed grid of signed arguments
/// and every algebra.
pub fn verify_scalar_series(ctrl: &SeriesControl) -> Result<VerificationReport> {
    const A: [f64; 5] = [-2.0, -0.5, 0.3, 1.0, 1.7];
    const B: [f64; 4] = [0.1, 1.0, 2.0, 3.0];
    let mut worst: f64 = 0.0;
    let mut count = 0u64;
    for alg in Algebra::ALL {
        for a in A {
            for b in B {
                let v = hypergeom_0f0_two(alg, &[a], &[b], ctrl)?;
                let r = if v.sign > 0.0 {
                    rel_from_log(v.log_abs - a * b)
                } else {
                    f64::INFINITY
                };
                worst = worst.max(r);
                count += 1;
            }
        }
    }
    Ok(VerificationReport::new("scalar_series", worst, 1e-8, Comparison::Below, count))
}

/// `sum_{kappa |- k} C_kappa(x) = (tr x)^k` for `k <= 6`, `m = 1..=4` and
/// every algebra, over `trials` random positive `x` each.
pub fn verify_jack_normalization(trials: usize, seed: u64) -> Result<VerificationReport> {
    const DEGREE: usize = 6;
    let mut worst: f64 = 0.0;
    let mut count = 0u64;
    for (s, alg) in Algebra::ALL.into_iter().enumerate() {
        for m in 1..=4 {
            let mut rng = substream(seed, (s * 8 + m) as u64);
            for _ in 0..trials {
                let x: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..3.0)).collect();
                let table = JackTable::new(alg, &x, DEGREE);
                let trace: f64 = x.iter().sum::<f64>() / table.scale();
                for k in 0..=DEGREE {
                    let sum: f64 = table.degree(k).iter().map(|(_, c)| c).sum();
                    worst = worst.max((sum / trace.powi(k as i32) - 1.0).abs());
                }
                count += 1;
            }
        }
    }
    Ok(VerificationReport::new("jack_normalization", worst, 1e-10, Comparison::Below, count))
}
