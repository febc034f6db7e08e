#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use riesz_core::algebra::{Algebra, AlgebraMatrix, HermitianMatrix, PositiveDefiniteMatrix};
use riesz_core::sampler::gaussian_matrix;
use riesz_core::special::Partition;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// `G G* / m + shift I` with Gaussian `G`; indefinite for negative shifts.
pub fn random_hermitian(algebra: Algebra, m: usize, shift: f64, rng: &mut ChaCha20Rng) -> HermitianMatrix {
    let g = gaussian_matrix(algebra, m, rng).unwrap();
    let x = g.gram().scale(1.0 / m as f64);
    x.add(&HermitianMatrix::scalar(algebra, m, shift).unwrap()).unwrap()
}

pub fn random_pd(algebra: Algebra, m: usize, shift: f64, rng: &mut ChaCha20Rng) -> PositiveDefiniteMatrix {
    assert!(shift > 0.0);
    random_hermitian(algebra, m, shift, rng).positive_definite().unwrap()
}

pub fn random_matrix(algebra: Algebra, m: usize, rng: &mut ChaCha20Rng) -> AlgebraMatrix {
    gaussian_matrix(algebra, m, rng).unwrap()
}

pub fn random_partition(m: usize, max_weight: u32, rng: &mut ChaCha20Rng) -> Partition {
    let k = rng.random_range(0..=max_weight);
    let parts = riesz_core::special::partitions_of(k, m);
    let p = &parts[rng.random_range(0..parts.len())];
    Partition::with_len(p, m).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b.abs().max(f64::MIN_POSITIVE)).abs()
}

pub fn algebra_strategy() -> impl proptest::strategy::Strategy<Value = Algebra> {
    proptest::sample::select(Algebra::MATRIX.to_vec())
}

pub fn any_algebra_strategy() -> impl proptest::strategy::Strategy<Value = Algebra> {
    proptest::sample::select(Algebra::ALL.to_vec())
}
