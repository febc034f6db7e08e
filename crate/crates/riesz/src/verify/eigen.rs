//! Eigenvalue-law checks: Kolmogorov-Smirnov tests of sampled spectra
//! against marginals of the joint eigenvalue density, and agreement of the
//! closed-form and series evaluations for an isotropic scale.

use rayon::prelude::*;
use riesz_core::quadrature::GaussLegendre;
use riesz_core::riesz::{EigenDensity, EigenRoute, RieszParams};
use riesz_core::sampler::Sampler;
use riesz_core::special::SeriesControl;
use riesz_core::stats::ks_test;
use riesz_core::{Error, Result};

use super::map_chunks;
use crate::report::{Comparison, VerificationReport};

const NODES: usize = 8;
const OUTER_PANELS: usize = 60;
const INNER_PANELS: usize = 24;

/// Tabulated marginal law of one ordered eigenvalue on `[0, upper]`.
///
/// The variable is mapped as `x = upper u^2` (and likewise for the inner
/// integration variables) to smooth the power behaviour at the origin; the
/// density in `u` is integrated with composite Gauss-Legendre panels, and
/// inside a panel the CDF integrates the Lagrange interpolant through the
/// panel nodes.
#[derive(Debug, Clone)]
pub struct MarginalLaw {
    upper: f64,
    gl: GaussLegendre,
    /// `(u, density in u)` at the nodes of each panel.
    nodes: Vec<Vec<(f64, f64)>>,
    /// CDF at the left edge of each panel, plus the total mass.
    starts: Vec<f64>,
}

fn panel_nodes(gl: &GaussLegendre, panels: usize) -> Vec<(f64, f64)> {
    (0..panels)
        .flat_map(|p| {
            let (a, b) = (p as f64 / panels as f64, (p + 1) as f64 / panels as f64);
            gl.on(a, b).collect::<Vec<_>>()
        })
        .collect()
}

impl MarginalLaw {
    /// Marginal of eigenvalue `index` (0 = largest) for `m <= 2`.
    pub fn new(density: &EigenDensity, index: usize, upper: f64) -> Result<Self> {
        let m = density.params().order();
        if m > 2 || index >= m {
            return Err(Error::Unsupported("tabulated eigenvalue marginals need m <= 2"));
        }
        let gl = GaussLegendre::new(NODES);
        let inner = panel_nodes(&gl, INNER_PANELS);
        let joint = |l: &[f64]| -> Result<f64> { Ok(density.log_density_values(l)?.exp()) };
        let marginal = |x: f64| -> Result<f64> {
            if m == 1 {
                return joint(&[x]);
            }
            let mut acc = 0.0;
            for &(w, wt) in &inner {
                acc += wt
                    * match index {
                        0 => joint(&[x, x * w * w])? * 2.0 * x * w,
                        _ => joint(&[x + upper * w * w, x])? * 2.0 * upper * w,
                    };
            }
            Ok(acc)
        };
        let nodes = (0..OUTER_PANELS)
            .into_par_iter()
            .map(|p| {
                let (a, b) = (p as f64 / OUTER_PANELS as f64, (p + 1) as f64 / OUTER_PANELS as f64);
                gl.on(a, b)
                    .map(|(u, _)| Ok((u, marginal(upper * u * u)? * 2.0 * upper * u)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut starts = Vec::with_capacity(OUTER_PANELS + 1);
        let mut acc = 0.0;
        starts.push(0.0);
        for (p, panel) in nodes.iter().enumerate() {
            let (a, b) = (p as f64 / OUTER_PANELS as f64, (p + 1) as f64 / OUTER_PANELS as f64);
            acc += gl.on(a, b).zip(panel).map(|((_, w), (_, h))| w * h).sum::<f64>();
            starts.push(acc);
        }
        Ok(MarginalLaw {
            upper,
            gl,
            nodes,
            starts,
        })
    }

    /// Total tabulated mass; close to 1 when the density is normalized and
    /// `upper` covers the support.
    pub fn total(&self) -> f64 {
        *self.starts.last().expect("at least one panel")
    }

    fn interpolate(panel: &[(f64, f64)], u: f64) -> f64 {
        let mut acc = 0.0;
        for (i, &(ui, hi)) in panel.iter().enumerate() {
            let mut l = 1.0;
            for (j, &(uj, _)) in panel.iter().enumerate() {
                if j != i {
                    l *= (u - uj) / (ui - uj);
                }
            }
            acc += l * hi;
        }
        acc
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= self.upper {
            return self.total();
        }
        let u = (x / self.upper).sqrt();
        let p = ((u * OUTER_PANELS as f64) as usize).min(OUTER_PANELS - 1);
        let a = p as f64 / OUTER_PANELS as f64;
        let panel = &self.nodes[p];
        self.starts[p] + self.gl.on(a, u).map(|(v, w)| w * Self::interpolate(panel, v)).sum::<f64>()
    }
}

/// Samples `n` spectra and tests every ordered-eigenvalue marginal; the
/// statistic is the Bonferroni-adjusted smallest p-value, threshold `0.01`.
pub fn verify_eigen_law(params: &RieszParams, n: u64, seed: u64, ctrl: &SeriesControl) -> Result<VerificationReport> {
    let m = params.order();
    let density = params.eigen_density(EigenRoute::Auto, ctrl)?;
    let sampler = Sampler::new(params)?;
    let parts = map_chunks(n, |range| {
        range
            .map(|j| sampler.draw(seed, j).as_hermitian().eigenvalues())
            .collect::<Vec<_>>()
    });
    let mut cols = vec![Vec::with_capacity(n as usize); m];
    for spectrum in parts.into_iter().flatten() {
        for (c, v) in cols.iter_mut().zip(spectrum) {
            c.push(v);
        }
    }
    let upper = 1.25 * cols[0].iter().copied().fold(0.0, f64::max);
    let mut min_p: f64 = 1.0;
    let mut detail = Vec::new();
    for (i, col) in cols.iter_mut().enumerate() {
        col.sort_by(f64::total_cmp);
        let law = MarginalLaw::new(&density, i, upper)?;
        let (d, p) = ks_test(col, |x| law.cdf(x));
        min_p = min_p.min(p);
        detail.push(format!("lambda_{}: D={d:.3e} p={p:.3e} mass={:.9}", i + 1, law.total()));
    }
    Ok(VerificationReport::new(
        format!(
            "eigen_law[beta={},m={m},type={},a={},kappa={}]",
            params.algebra().beta(),
            params.variant(),
            params.a(),
            params.kappa()
        ),
        (min_p * m as f64).min(1.0),
        0.01,
        Comparison::Above,
        n,
    )
    .with_detail(detail.join("; ")))
}

/// Deterministic spectra in `s (0.1, 3)` from an additive recurrence.
fn grid_spectrum(j: usize, m: usize, s: f64) -> Vec<f64> {
    const STEPS: [f64; 4] = [0.618_033_988_749_895, 0.414_213_562_373_095, 0.732_050_807_568_877, 0.236_067_977_499_79];
    let mut l: Vec<f64> = (0..m)
        .map(|i| {
            let u = (0.5 + (j + 1) as f64 * STEPS[i % 4] + i as f64 / m as f64).fract();
            s * (0.1 + 2.9 * u)
        })
        .collect();
    l.sort_by(|a, b| b.total_cmp(a));
    l
}

/// Closed form versus series evaluation of the eigenvalue density for an
/// isotropic scale, at `points` spectra; statistic is the largest relative
/// difference, threshold `1e-8`.
pub fn verify_eigen_paths(params: &RieszParams, points: usize, ctrl: &SeriesControl) -> Result<VerificationReport> {
    let s = params
        .isotropic_scale()
        .ok_or(Error::Unsupported("the closed-form path needs an isotropic scale"))?;
    let m = params.order();
    let closed = params.eigen_density(EigenRoute::ClosedForm, ctrl)?;
    let series = params.eigen_density(EigenRoute::Series, ctrl)?;
    let mut worst: f64 = 0.0;
    let mut used = 0u64;
    for j in 0..points * 4 {
        if used as usize == points {
            break;
        }
        let l = grid_spectrum(j, m, s);
        if l.windows(2).any(|w| w[0] - w[1] < 1e-3 * s) {
            continue;
        }
        let d = series.log_density_values(&l)? - closed.log_density_values(&l)?;
        worst = worst.max(super::rel_from_log(d));
        used += 1;
    }
    Ok(VerificationReport::new(
        format!(
            "eigen_paths[beta={},m={m},type={},a={},kappa={}]",
            params.algebra().beta(),
            params.variant(),
            params.a(),
            params.kappa()
        ),
        worst,
        1e-8,
        Comparison::Below,
        used,
    ))
}
