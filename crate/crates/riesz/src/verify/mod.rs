//! Self-verification harness. Every check returns a
//! [`VerificationReport`](crate::report::VerificationReport) that is a pure
//! function of its configuration and seed.
//!
//! Monte Carlo checks split the draw indices into fixed chunks, reduce each
//! chunk in parallel and merge the partial results in chunk order, so the
//! statistics do not depend on the number of worker threads.

mod charfn;
mod eigen;
mod identities;
mod jacobian;
mod laplace;
mod normalization;
mod series;
mod suite;

use std::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

pub use charfn::{char_fn_points, verify_char_fn, verify_sampler_diagonals};
pub use eigen::{verify_eigen_law, verify_eigen_paths, MarginalLaw};
pub use identities::{verify_gamma_identity, verify_negative_weight_identity, verify_power_identities};
pub use jacobian::{numeric_log_jacobian_congruence, numeric_log_jacobian_inverse, verify_jacobians};
pub use laplace::{verify_laplace, LaplaceCase};
pub use normalization::{importance_estimate, verify_normalization, verify_printed_normalizer_rejected, Normalizer};
pub use series::{verify_jack_normalization, verify_scalar_series};
pub use suite::{
    dual_path_control, laplace_cases, normalization_params, run_suite, sampler_gate_params, tilted_scale, Check, Suite,
};

/// Draws per parallel work unit.
pub const CHUNK: u64 = 4096;

/// `f` over consecutive index chunks of `0..n`, results in chunk order.
pub(crate) fn map_chunks<T: Send>(n: u64, f: impl Fn(Range<u64>) -> T + Sync) -> Vec<T> {
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            f(lo..(lo + CHUNK).min(n))
        })
        .collect()
}

/// Independent generator for auxiliary randomness of a check.
pub(crate) fn substream(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Whether the spectral condition number of `A A*` is below `1e3`; random
/// test matrices beyond it are resampled.
pub(crate) fn well_conditioned(a: &riesz_core::algebra::AlgebraMatrix) -> bool {
    let ev = a.gram().eigenvalues();
    let (lo, hi) = ev.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
    lo > 1e-3 * hi
}

/// `|exp(d) - 1|` for a log-difference `d`.
pub(crate) fn rel_from_log(d: f64) -> f64 {
    d.exp_m1().abs()
}
