//! Triangular-factor generator for Riesz matrices.
//!
//! Type I: `X = (C T)(C T)*` with `S = C C*` (`C` lower) and `T` lower
//! triangular, `t_ii^2 ~ Gamma(a + k_i - (i-1)beta/2)`.
//! Type II: `X = (R U)(R U)*` with `S = R R*` (`R` upper) and `U` upper
//! triangular, `u_ii^2 ~ Gamma(a - k_i - (m-i)beta/2)`.
//! Off-diagonal entries have independent `N(0, 1/2)` real coordinates.
//!
//! Draw `j` of a stream seeded with `seed` uses ChaCha20 stream `j`, so a
//! draw depends only on `(seed, j)`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Gamma, StandardNormal};

use crate::algebra::{AlgebraMatrix, HermitianMatrix, PositiveDefiniteMatrix, Quaternion};
use crate::riesz::{RieszParams, Variant};
use crate::{Error, Result, C64};

/// Parameters, seed and count of a stream of draws.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub params: RieszParams,
    pub seed: u64,
    pub n: usize,
}

/// Precomputed shapes and scale factor for one parameter set.
#[derive(Debug, Clone)]
pub struct Sampler {
    params: RieszParams,
    shapes: Vec<f64>,
    gammas: Vec<Gamma<f64>>,
    factor: AlgebraMatrix,
}

/// Gamma shapes of the squared diagonal of the triangular factor.
pub fn diagonal_shapes(params: &RieszParams) -> Vec<f64> {
    let beta = params.algebra().beta_f64();
    let m = params.order();
    let a = params.a();
    params
        .kappa()
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &k)| match params.variant() {
            Variant::TypeI => a + k as f64 - i as f64 * beta / 2.0,
            Variant::TypeII => a - k as f64 - (m - 1 - i) as f64 * beta / 2.0,
        })
        .collect()
}

impl Sampler {
    pub fn new(params: &RieszParams) -> Result<Self> {
        params.algebra().require_matrices()?;
        let shapes = diagonal_shapes(params);
        let gammas = shapes
            .iter()
            .map(|&s| {
                if !(s > 0.0) {
                    return Err(Error::Domain {
                        parameter: "gamma shape",
                        value: s,
                        bound: 0.0,
                        rule: "zero",
                    });
                }
                Gamma::new(s, 1.0).map_err(|_| Error::InvalidArgument(alloc::format!("gamma shape {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let sigma = params.sigma()?;
        let factor = match params.variant() {
            Variant::TypeI => sigma.cholesky(),
            Variant::TypeII => sigma.upper_cholesky(),
        };
        Ok(Sampler {
            params: params.clone(),
            shapes,
            gammas,
            factor,
        })
    }

    pub fn params(&self) -> &RieszParams {
        &self.params
    }

    pub fn shapes(&self) -> &[f64] {
        &self.shapes
    }

    fn rng(seed: u64, index: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(index);
        rng
    }

    /// The unscaled triangular factor of draw `index` (lower for Type I,
    /// upper for Type II). Diagonal gammas are drawn first, then the
    /// off-diagonal entries row by row.
    pub fn triangular_factor(&self, seed: u64, index: u64) -> AlgebraMatrix {
        let mut rng = Self::rng(seed, index);
        let m = self.params.order();
        let algebra = self.params.algebra();
        let beta = algebra.beta() as usize;
        let diag: Vec<f64> = self.gammas.iter().map(|g| rng.sample(g).sqrt()).collect();
        let mut entries = alloc::vec![Quaternion::ZERO; m * m];
        for (i, d) in diag.iter().enumerate() {
            entries[i * m + i] = Quaternion::real(*d);
        }
        let lower = self.params.variant() == Variant::TypeI;
        for i in 0..m {
            for j in 0..m {
                if (lower && j < i) || (!lower && j > i) {
                    let mut c = [0.0; 4];
                    for v in c.iter_mut().take(beta) {
                        let z: f64 = rng.sample(StandardNormal);
                        *v = z * FRAC_1_SQRT_2;
                    }
                    entries[i * m + j] = Quaternion::from_coords(&c);
                }
            }
        }
        AlgebraMatrix::from_fn(algebra, m, |i, j| entries[i * m + j]).expect("matrix algebra was checked")
    }

    /// Draw `index` of the stream seeded with `seed`.
    pub fn draw(&self, seed: u64, index: u64) -> PositiveDefiniteMatrix {
        let t = self.triangular_factor(seed, index);
        let ct = self.factor.mul(&t).expect("orders agree");
        ct.gram()
            .positive_definite()
            .expect("a Gram matrix of an invertible triangular factor is positive definite")
    }
}

/// The draws of a configuration, in index order.
pub fn sample(cfg: &SamplerConfig) -> Result<impl Iterator<Item = PositiveDefiniteMatrix>> {
    if cfg.n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let sampler = Sampler::new(&cfg.params)?;
    let seed = cfg.seed;
    Ok((0..cfg.n as u64).map(move |j| sampler.draw(seed, j)))
}

/// `(1/n) sum_j exp(i tr(T X_j))` for each `T`.
pub fn empirical_char_fn<'a>(
    draws: impl IntoIterator<Item = &'a HermitianMatrix>,
    ts: &[HermitianMatrix],
) -> Result<Vec<C64>> {
    let mut acc = alloc::vec![C64::new(0.0, 0.0); ts.len()];
    let mut n = 0usize;
    for x in draws {
        for (a, t) in acc.iter_mut().zip(ts) {
            let phase = t.trace_product(x)?;
            *a += C64::new(phase.cos(), phase.sin());
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::InvalidArgument("no draws".into()));
    }
    Ok(acc.into_iter().map(|a| a / n as f64).collect())
}

/// A Hermitian matrix with independent standard normal real coordinates
/// (scaled by `scale`), for random test points.
pub fn gaussian_hermitian<R: Rng + ?Sized>(
    algebra: crate::algebra::Algebra,
    m: usize,
    scale: f64,
    rng: &mut R,
) -> Result<HermitianMatrix> {
    let coords: Vec<f64> = (0..algebra.hermitian_dim(m))
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z * scale
        })
        .collect();
    HermitianMatrix::from_realified(algebra, m, &coords)
}

/// A square matrix with independent standard normal real coordinates.
pub fn gaussian_matrix<R: Rng + ?Sized>(
    algebra: crate::algebra::Algebra,
    m: usize,
    rng: &mut R,
) -> Result<AlgebraMatrix> {
    let beta = algebra.beta() as usize;
    let entries: Vec<Quaternion> = (0..m * m)
        .map(|_| {
            let mut c = [0.0; 4];
            for v in c.iter_mut().take(beta) {
                *v = rng.sample(StandardNormal);
            }
            Quaternion::from_coords(&c)
        })
        .collect();
    AlgebraMatrix::from_fn(algebra, m, |i, j| entries[i * m + j])
}
