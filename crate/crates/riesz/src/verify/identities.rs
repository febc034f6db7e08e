//! Gamma-function identities and the `q_kappa` algebraic identities.

use rand::Rng;
use riesz_core::algebra::{Algebra, HermitianMatrix};
use riesz_core::sampler::gaussian_matrix;
use riesz_core::special::{
    gen_pochhammer, log_gen_pochhammer_signed, log_mv_gamma, log_mv_gamma_weighted, partitions_of,
    power_identity_residuals, Partition, PowerIdentityResiduals, WeightSign,
};
use riesz_core::Result;

use super::{rel_from_log, substream, well_conditioned};
use crate::report::{Comparison, VerificationReport};

pub(crate) fn random_partition(m: usize, max_weight: u32, rng: &mut impl Rng) -> Partition {
    let k = rng.random_range(0..=max_weight);
    let parts = partitions_of(k, m);
    let p = &parts[rng.random_range(0..parts.len())];
    Partition::with_len(p, m).expect("partition of bounded length")
}

/// `Gamma[a, kappa] = [a]_kappa Gamma[a]` over every algebra and
/// `m = 1..=4`, `trials` random `(a, kappa)` each with `|kappa| <= 6`.
pub fn verify_gamma_identity(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut worst: f64 = 0.0;
    let mut count = 0u64;
    for (s, alg) in Algebra::ALL.into_iter().enumerate() {
        for m in 1..=4 {
            let mut rng = substream(seed, (s * 8 + m) as u64);
            let bound = (m as f64 - 1.0) * alg.beta_f64() / 2.0;
            for _ in 0..trials {
                let kappa = random_partition(m, 6, &mut rng);
                let a = bound + rng.random_range(0.05..10.0);
                let lhs = log_mv_gamma_weighted(alg, a, &kappa, WeightSign::Positive)?;
                let rhs = gen_pochhammer(alg, a, &kappa).ln() + log_mv_gamma(alg, m, a)?;
                worst = worst.max(rel_from_log(lhs - rhs));
                count += 1;
            }
        }
    }
    Ok(VerificationReport::new("gamma_identity", worst, 1e-10, Comparison::Below, count))
}

/// `Gamma[a, -kappa] |[-a + (m-1)beta/2 + 1]_kappa| = Gamma[a]` with the
/// Pochhammer sign equal to `(-1)^k`; a wrong sign reports an infinite
/// residual.
pub fn verify_negative_weight_identity(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut worst: f64 = 0.0;
    let mut count = 0u64;
    for (s, alg) in Algebra::ALL.into_iter().enumerate() {
        for m in 1..=4 {
            let mut rng = substream(seed, (s * 8 + m) as u64);
            let base = (m as f64 - 1.0) * alg.beta_f64() / 2.0;
            for _ in 0..trials {
                let kappa = random_partition(m, 6, &mut rng);
                let a = base + kappa.first() as f64 + rng.random_range(0.05..10.0);
                let lhs = log_mv_gamma_weighted(alg, a, &kappa, WeightSign::Negative)?;
                let (log_p, sign) = log_gen_pochhammer_signed(alg, -a + base + 1.0, &kappa);
                let expected_sign = if kappa.weight() % 2 == 0 { 1.0 } else { -1.0 };
                let r = if sign == expected_sign {
                    rel_from_log(lhs + log_p - log_mv_gamma(alg, m, a)?)
                } else {
                    f64::INFINITY
                };
                worst = worst.max(r);
                count += 1;
            }
        }
    }
    Ok(VerificationReport::new("negative_weight_identity", worst, 1e-10, Comparison::Below, count))
}

/// All `q_kappa` identities over `pairs` random `(A, B)` per matrix algebra,
/// orders cycling through `1..=4`, partitions of weight at most 5.
pub fn verify_power_identities(pairs: usize, seed: u64) -> Result<VerificationReport> {
    let mut worst = [0.0f64; 7];
    let mut count = 0u64;
    for (s, alg) in Algebra::MATRIX.into_iter().enumerate() {
        let mut rng = substream(seed, s as u64);
        for j in 0..pairs {
            let m = 1 + j % 4;
            let g = gaussian_matrix(alg, m, &mut rng)?;
            let a = g
                .gram()
                .scale(1.0 / m as f64)
                .add(&HermitianMatrix::scalar(alg, m, 0.5)?)?
                .positive_definite()?;
            let mut b = gaussian_matrix(alg, m, &mut rng)?;
            while !well_conditioned(&b) {
                b = gaussian_matrix(alg, m, &mut rng)?;
            }
            let kappa = random_partition(m, 5, &mut rng);
            let tau = random_partition(m, 5, &mut rng);
            let r = power_identity_residuals(&a, &b, &kappa, &tau)?;
            for (w, v) in worst.iter_mut().zip(r.as_array()) {
                *w = w.max(v);
            }
            count += 1;
        }
    }
    let detail = PowerIdentityResiduals::NAMES
        .iter()
        .zip(worst)
        .map(|(n, v)| format!("{n}={v:.3e}"))
        .collect::<Vec<_>>()
        .join(" ");
    let max = worst.iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(VerificationReport::new("power_identities", max, 1e-10, Comparison::Below, count).with_detail(detail))
}
