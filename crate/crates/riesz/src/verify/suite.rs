//! Named checks and the canned campaigns run by `riesz verify`.

use std::time::Instant;

use rayon::prelude::*;
use riesz_core::algebra::{Algebra, HermitianMatrix, PositiveDefiniteMatrix};
use riesz_core::riesz::{RieszParams, Scale, Variant};
use riesz_core::special::{Partition, SeriesControl, ShiftPolicy, WeightSign};
use riesz_core::Result;

use super::*;
use crate::report::VerificationReport;

/// One configured check.
#[derive(Debug, Clone)]
pub enum Check {
    GammaIdentity { trials: usize },
    NegativeWeightIdentity { trials: usize },
    PowerIdentities { pairs: usize },
    Laplace(LaplaceCase),
    Jacobians { algebra: Algebra, m: usize, trials: usize },
    Normalization { params: RieszParams, n: u64 },
    PrintedNormalizerRejected { params: RieszParams, n: u64 },
    CharFn { params: RieszParams, n: u64, points: usize },
    SamplerDiagonals { params: RieszParams, n: u64 },
    EigenLaw { params: RieszParams, n: u64, ctrl: SeriesControl },
    EigenPaths { params: RieszParams, points: usize, ctrl: SeriesControl },
    ScalarSeries { ctrl: SeriesControl },
    JackNormalization { trials: usize },
}

impl Check {
    pub fn kind(&self) -> &'static str {
        match self {
            Check::GammaIdentity { .. } => "gamma_identity",
            Check::NegativeWeightIdentity { .. } => "negative_weight_identity",
            Check::PowerIdentities { .. } => "power_identities",
            Check::Laplace(_) => "laplace",
            Check::Jacobians { .. } => "jacobians",
            Check::Normalization { .. } => "normalization",
            Check::PrintedNormalizerRejected { .. } => "printed_normalizer_rejected",
            Check::CharFn { .. } => "char_fn",
            Check::SamplerDiagonals { .. } => "sampler_diagonals",
            Check::EigenLaw { .. } => "eigen_law",
            Check::EigenPaths { .. } => "eigen_paths",
            Check::ScalarSeries { .. } => "scalar_series",
            Check::JackNormalization { .. } => "jack_normalization",
        }
    }

    fn evaluate(&self, seed: u64) -> Result<VerificationReport> {
        match self {
            Check::GammaIdentity { trials } => verify_gamma_identity(*trials, seed),
            Check::NegativeWeightIdentity { trials } => verify_negative_weight_identity(*trials, seed),
            Check::PowerIdentities { pairs } => verify_power_identities(*pairs, seed),
            Check::Laplace(case) => verify_laplace(case),
            Check::Jacobians { algebra, m, trials } => verify_jacobians(*algebra, *m, *trials, seed),
            Check::Normalization { params, n } => verify_normalization(params, *n, seed),
            Check::PrintedNormalizerRejected { params, n } => verify_printed_normalizer_rejected(params, *n, seed),
            Check::CharFn { params, n, points } => verify_char_fn(params, *n, *points, seed),
            Check::SamplerDiagonals { params, n } => verify_sampler_diagonals(params, *n, seed),
            Check::EigenLaw { params, n, ctrl } => verify_eigen_law(params, *n, seed, ctrl),
            Check::EigenPaths { params, points, ctrl } => verify_eigen_paths(params, *points, ctrl),
            Check::ScalarSeries { ctrl } => verify_scalar_series(ctrl),
            Check::JackNormalization { trials } => verify_jack_normalization(*trials, seed),
        }
    }

    /// Runs the check; evaluation errors become failed reports.
    pub fn run(&self, seed: u64) -> VerificationReport {
        let start = Instant::now();
        let mut report = self
            .evaluate(seed)
            .unwrap_or_else(|e| VerificationReport::errored(self.kind(), e));
        report.runtime = Some(start.elapsed());
        report
    }
}

/// Canned campaigns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Every check at reduced sizes (seconds).
    Quick,
    /// Every check at its default size, normalization at `n = 1e5`.
    Default,
    /// The default campaign with the normalization runs at `n = 1e6`.
    Long,
}

/// A non-diagonal scale with diagonal `(2, 1, ..)` and off-diagonal
/// entries `0.4 + 0.3i + 0.2j + 0.1k` truncated to the algebra.
pub fn tilted_scale(algebra: Algebra, m: usize) -> Result<PositiveDefiniteMatrix> {
    let off = [0.4, 0.3, 0.2, 0.1];
    let beta = algebra.beta() as usize;
    let mut coords = Vec::new();
    for i in 0..m {
        for _ in 0..i {
            coords.extend_from_slice(&off[..beta]);
        }
        coords.push(if i == 0 { 2.0 } else { 1.0 });
    }
    HermitianMatrix::from_realified(algebra, m, &coords)?.positive_definite()
}

fn params(variant: Variant, algebra: Algebra, a: f64, kappa: &[u32], scale: Scale) -> Result<RieszParams> {
    RieszParams::new(variant, algebra, a, Partition::with_len(kappa, kappa.len())?, scale)
}

/// Shape `1.5` above the domain bound of the variant.
fn comfortable_shape(variant: Variant, algebra: Algebra, kappa: &[u32]) -> f64 {
    let base = (kappa.len() as f64 - 1.0) * algebra.beta_f64() / 2.0;
    match variant {
        Variant::TypeI => base - *kappa.last().unwrap_or(&0) as f64 + 1.5,
        Variant::TypeII => base + *kappa.first().unwrap_or(&0) as f64 + 1.5,
    }
}

/// The `m = 2` sampler-gate configurations: every matrix algebra, both
/// variants, `kappa = (0,0)` then `kappa = (2,1)`, tilted scale.
pub fn sampler_gate_params() -> Result<Vec<RieszParams>> {
    let mut out = Vec::new();
    for kappa in [[0u32, 0], [2, 1]] {
        for algebra in Algebra::MATRIX {
            for variant in [Variant::TypeI, Variant::TypeII] {
                let a = comfortable_shape(variant, algebra, &kappa);
                out.push(params(variant, algebra, a, &kappa, Scale::Matrix(tilted_scale(algebra, 2)?))?);
            }
        }
    }
    Ok(out)
}

/// Normalization configurations: `(beta, m)` in `{(1,2), (2,2), (1,3)}`,
/// both variants, two partitions of weight at most 3 each.
pub fn normalization_params() -> Result<Vec<RieszParams>> {
    let mut out = Vec::new();
    for (beta, m) in [(1, 2), (2, 2), (1, 3)] {
        let algebra = Algebra::from_beta(beta)?;
        let kappas: [Vec<u32>; 2] = if m == 2 {
            [vec![1, 0], vec![2, 1]]
        } else {
            [vec![1, 0, 0], vec![2, 1, 0]]
        };
        for kappa in &kappas {
            for variant in [Variant::TypeI, Variant::TypeII] {
                let a = comfortable_shape(variant, algebra, kappa);
                out.push(params(variant, algebra, a, kappa, Scale::Matrix(tilted_scale(algebra, m)?))?);
            }
        }
    }
    Ok(out)
}

/// Ten parameter points (five scalar, five real `2 x 2`), each with both
/// weight signs.
pub fn laplace_cases() -> Result<Vec<LaplaceCase>> {
    let scalar = [(1.5, 1, 0.7), (2.25, 2, 1.0), (3.0, 0, 2.0), (4.5, 3, 0.5), (6.0, 2, 1.3)];
    let matrix: [(f64, [u32; 2], [f64; 3]); 5] = [
        (3.0, [1, 0], [1.0, 0.0, 2.0]),
        (2.5, [0, 0], [1.0, 0.0, 1.0]),
        (3.5, [2, 1], [1.5, 0.3, 1.0]),
        (4.0, [1, 1], [0.8, -0.2, 1.2]),
        (4.5, [2, 0], [1.0, 0.5, 2.0]),
    ];
    let mut out = Vec::new();
    for sign in [WeightSign::Positive, WeightSign::Negative] {
        for (a, k, s) in scalar {
            out.push(LaplaceCase {
                algebra: Algebra::Real,
                a,
                kappa: Partition::with_len(&[k], 1)?,
                sigma: PositiveDefiniteMatrix::diagonal(Algebra::Real, &[s])?,
                sign,
            });
        }
        for (a, k, s) in matrix {
            out.push(LaplaceCase {
                algebra: Algebra::Real,
                a,
                kappa: Partition::with_len(&k, 2)?,
                sigma: HermitianMatrix::from_realified(Algebra::Real, 2, &s)?.positive_definite()?,
                sign,
            });
        }
    }
    Ok(out)
}

/// Series control for the dual-path eigenvalue check: no argument shift
/// (which would make the isotropic series trivial), degree 50.
pub fn dual_path_control() -> SeriesControl {
    SeriesControl {
        max_degree: 50,
        rel_tol: 1e-14,
        hard_fail: true,
        shift: ShiftPolicy::None,
    }
}

impl Suite {
    pub fn checks(self) -> Result<Vec<Check>> {
        let quick = self == Suite::Quick;
        let mc = if quick { 20_000 } else { 100_000 };
        let norm_n = match self {
            Suite::Quick => 20_000,
            Suite::Default => 100_000,
            Suite::Long => 1_000_000,
        };
        let mut checks = vec![
            Check::GammaIdentity { trials: if quick { 10 } else { 50 } },
            Check::NegativeWeightIdentity { trials: if quick { 10 } else { 50 } },
            Check::PowerIdentities { pairs: if quick { 20 } else { 200 } },
            Check::ScalarSeries { ctrl: dual_path_control() },
            Check::JackNormalization { trials: if quick { 5 } else { 20 } },
        ];
        let laplace = laplace_cases()?;
        if quick {
            checks.push(Check::Laplace(laplace[0].clone()));
            checks.push(Check::Laplace(laplace[5].clone()));
        } else {
            checks.extend(laplace.into_iter().map(Check::Laplace));
        }
        let jac: &[(u32, usize)] = if quick { &[(1, 2)] } else { &[(1, 2), (1, 3), (2, 2), (4, 2)] };
        for &(beta, m) in jac {
            checks.push(Check::Jacobians {
                algebra: Algebra::from_beta(beta)?,
                m,
                trials: if quick { 10 } else { 100 },
            });
        }
        let norm = normalization_params()?;
        let norm: Vec<RieszParams> = if quick { norm.into_iter().take(2).collect() } else { norm };
        for p in &norm {
            checks.push(Check::Normalization { params: p.clone(), n: norm_n });
            if p.variant() == Variant::TypeII {
                checks.push(Check::PrintedNormalizerRejected { params: p.clone(), n: norm_n });
            }
        }
        let gate = sampler_gate_params()?;
        let gate: Vec<RieszParams> = if quick { gate.into_iter().step_by(5).collect() } else { gate };
        for p in &gate {
            checks.push(Check::CharFn {
                params: p.clone(),
                n: mc,
                points: 20,
            });
            checks.push(Check::SamplerDiagonals { params: p.clone(), n: mc });
            if !quick {
                checks.push(Check::EigenLaw {
                    params: p.clone(),
                    n: mc,
                    ctrl: SeriesControl::default(),
                });
            }
        }
        if quick {
            // isotropic scale: closed-form route, no angular quadrature
            checks.push(Check::EigenLaw {
                params: params(Variant::TypeI, Algebra::Real, 2.0, &[2, 1], Scale::Isotropic(2.0))?,
                n: mc,
                ctrl: SeriesControl::default(),
            });
        }
        let iso = params(
            Variant::TypeI,
            Algebra::Quaternion,
            comfortable_shape(Variant::TypeI, Algebra::Quaternion, &[1, 0]),
            &[1, 0],
            Scale::Isotropic(1.0),
        )?;
        checks.push(Check::EigenPaths {
            params: iso,
            points: 50,
            ctrl: dual_path_control(),
        });
        Ok(checks)
    }
}

/// Runs the checks concurrently; check `i` uses seed `seed + i` and the
/// reports come back in check order.
pub fn run_suite(checks: &[Check], seed: u64) -> Vec<VerificationReport> {
    checks
        .par_iter()
        .enumerate()
        .map(|(i, c)| c.run(seed.wrapping_add(i as u64)))
        .collect()
}
