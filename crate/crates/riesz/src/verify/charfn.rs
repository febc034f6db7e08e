//! Sampler checks: empirical characteristic function against the closed
//! form, and the laws of the squared diagonal of the triangular factor.

use riesz_core::algebra::HermitianMatrix;
use riesz_core::riesz::RieszParams;
use riesz_core::sampler::{gaussian_hermitian, Sampler};
use riesz_core::stats::ks_test;
use riesz_core::{Error, Result, C64};
use statrs::distribution::{ContinuousCDF, Gamma};

use super::{map_chunks, substream};
use crate::report::{Comparison, VerificationReport};

/// Stream of the evaluation points, disjoint from the draw streams.
const POINT_STREAM: u64 = u64::MAX;

/// Random Hermitian evaluation points with entries of the order of the
/// inverse size of a draw.
pub fn char_fn_points(params: &RieszParams, count: usize, seed: u64) -> Result<Vec<HermitianMatrix>> {
    let m = params.order();
    let shapes: f64 = Sampler::new(params)?.shapes().iter().sum();
    let mean_scale = params.sigma()?.as_hermitian().trace() / m as f64;
    let scale = 1.0 / (shapes * mean_scale);
    let mut rng = substream(seed, POINT_STREAM);
    (0..count)
        .map(|_| gaussian_hermitian(params.algebra(), m, scale, &mut rng))
        .collect()
}

/// Largest `|ecf(T) - cf(T)|` over `points` random `T`; threshold `4/sqrt(n)`.
pub fn verify_char_fn(params: &RieszParams, n: u64, points: usize, seed: u64) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let ts = char_fn_points(params, points, seed)?;
    let sampler = Sampler::new(params)?;
    let parts = map_chunks(n, |range| -> Result<Vec<C64>> {
        let mut acc = vec![C64::new(0.0, 0.0); ts.len()];
        for j in range {
            let x = sampler.draw(seed, j);
            for (a, t) in acc.iter_mut().zip(&ts) {
                let phase = t.trace_product(x.as_hermitian())?;
                *a += C64::new(phase.cos(), phase.sin());
            }
        }
        Ok(acc)
    });
    let mut sums = vec![C64::new(0.0, 0.0); ts.len()];
    for p in parts {
        for (s, v) in sums.iter_mut().zip(p?) {
            *s += v;
        }
    }
    let mut worst: f64 = 0.0;
    let mut min_modulus = f64::INFINITY;
    for (s, t) in sums.iter().zip(&ts) {
        let exact = params.char_fn(t)?;
        worst = worst.max((s / n as f64 - exact).norm());
        min_modulus = min_modulus.min(exact.norm());
    }
    Ok(VerificationReport::new(
        format!(
            "char_fn[beta={},m={},type={},a={},kappa={}]",
            params.algebra().beta(),
            params.order(),
            params.variant(),
            params.a(),
            params.kappa()
        ),
        worst,
        4.0 / (n as f64).sqrt(),
        Comparison::Below,
        n,
    )
    .with_detail(format!("points={points} min|cf|={min_modulus:.3e}")))
}

/// Kolmogorov-Smirnov tests of each squared diagonal entry of the
/// triangular factor against its gamma law; the statistic is the
/// Bonferroni-adjusted smallest p-value, threshold `1e-3`.
pub fn verify_sampler_diagonals(params: &RieszParams, n: u64, seed: u64) -> Result<VerificationReport> {
    let sampler = Sampler::new(params)?;
    let m = params.order();
    let parts = map_chunks(n, |range| {
        let mut cols = vec![Vec::with_capacity((range.end - range.start) as usize); m];
        for j in range {
            let t = sampler.triangular_factor(seed, j);
            for (i, col) in cols.iter_mut().enumerate() {
                col.push(t.entry(i, i).w * t.entry(i, i).w);
            }
        }
        cols
    });
    let mut cols = vec![Vec::with_capacity(n as usize); m];
    for p in parts {
        for (c, v) in cols.iter_mut().zip(p) {
            c.extend(v);
        }
    }
    let mut min_p: f64 = 1.0;
    let mut detail = Vec::new();
    for (i, (col, &shape)) in cols.iter_mut().zip(sampler.shapes()).enumerate() {
        col.sort_by(f64::total_cmp);
        let law = Gamma::new(shape, 1.0).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let (d, p) = ks_test(col, |x| law.cdf(x));
        min_p = min_p.min(p);
        detail.push(format!("t{i}{i}^2~Gamma({shape}): D={d:.3e} p={p:.3e}"));
    }
    Ok(VerificationReport::new(
        format!(
            "sampler_diagonals[beta={},m={m},type={},a={},kappa={}]",
            params.algebra().beta(),
            params.variant(),
            params.a(),
            params.kappa()
        ),
        (min_p * m as f64).min(1.0),
        1e-3,
        Comparison::Above,
        n,
    )
    .with_detail(detail.join("; ")))
}
