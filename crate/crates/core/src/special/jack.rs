//! Jack polynomials in the C normalization, evaluated on eigenvalues.
//!
//! `J_kappa` is built variable by variable with the horizontal-strip
//! recursion `J_kappa(x_1..x_n) = sum_mu J_mu(x_1..x_{n-1}) x_n^{|kappa|-|mu|}
//! beta_{kappa mu}`, then rescaled by `C_kappa = alpha^k k! / j_kappa J_kappa`.

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::gamma::log_gamma;
use super::partition::{conjugate, partitions_of};
use crate::algebra::Algebra;

/// Upper hook length `k'_j - i + alpha (k_i - j + 1)` (1-based, written
/// here 0-based).
fn upper_hook(nu: &[u32], nu_conj: &[u32], i: usize, j: usize, alpha: f64) -> f64 {
    nu_conj[j] as f64 - i as f64 - 1.0 + alpha * (nu[i] as f64 - j as f64)
}

/// Lower hook length `k'_j - i + 1 + alpha (k_i - j)`.
fn lower_hook(nu: &[u32], nu_conj: &[u32], i: usize, j: usize, alpha: f64) -> f64 {
    nu_conj[j] as f64 - i as f64 + alpha * (nu[i] as f64 - j as f64 - 1.0)
}

/// `log j_kappa = sum_boxes log(upper hook * lower hook)`.
fn log_j(kappa: &[u32], alpha: f64) -> f64 {
    let conj = conjugate(kappa);
    let mut acc = 0.0;
    for (i, &row) in kappa.iter().enumerate() {
        for j in 0..row as usize {
            acc += (upper_hook(kappa, &conj, i, j, alpha) * lower_hook(kappa, &conj, i, j, alpha)).ln();
        }
    }
    acc
}

/// Coefficient `beta_{kappa mu}` of the horizontal-strip recursion.
fn strip_coefficient(kappa: &[u32], mu: &[u32], alpha: f64) -> f64 {
    let kc = conjugate(kappa);
    let mc = conjugate(mu);
    let same_column = |j: usize| kc.get(j).copied().unwrap_or(0) == mc.get(j).copied().unwrap_or(0);
    let mut acc = 1.0;
    for (i, &row) in kappa.iter().enumerate() {
        for j in 0..row as usize {
            acc *= if same_column(j) {
                upper_hook(kappa, &kc, i, j, alpha)
            } else {
                lower_hook(kappa, &kc, i, j, alpha)
            };
        }
    }
    for (i, &row) in mu.iter().enumerate() {
        for j in 0..row as usize {
            acc /= if same_column(j) {
                upper_hook(mu, &mc, i, j, alpha)
            } else {
                lower_hook(mu, &mc, i, j, alpha)
            };
        }
    }
    acc
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Every `mu` with `kappa / mu` a horizontal strip and at most `n - 1`
/// nonzero parts: `kappa_{i+1} <= mu_i <= kappa_i`, `mu_n = 0`.
fn horizontal_strips(kappa: &[u32], n: usize, mut visit: impl FnMut(&[u32])) {
    let mut padded: Vec<u32> = kappa.to_vec();
    padded.resize(n, 0);
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut mu = alloc::vec![0u32; n - 1];
    fn rec(i: usize, padded: &[u32], mu: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if i == mu.len() {
            let t = trim(mu.clone());
            visit(&t);
            return;
        }
        for v in padded[i + 1]..=padded[i] {
            mu[i] = v;
            rec(i + 1, padded, mu, visit);
        }
    }
    rec(0, &padded, &mut mu, &mut visit);
}

/// `log C_kappa(1^m)` in closed form:
/// `J_kappa(1^m) = prod_boxes (m - i + alpha j)` (0-based `i`, `j`).
pub fn log_jack_at_ones(algebra: Algebra, kappa: &[u32], m: usize) -> f64 {
    let alpha = algebra.alpha();
    let k: u32 = kappa.iter().sum();
    let mut log_jv = 0.0;
    for (i, &row) in kappa.iter().enumerate() {
        for j in 0..row {
            log_jv += (m as f64 - i as f64 + alpha * j as f64).ln();
        }
    }
    k as f64 * alpha.ln() + log_gamma(k as f64 + 1.0) - log_j(kappa, alpha) + log_jv
}

/// C-normalized Jack polynomials `C_kappa(x)` for every partition of
/// weight at most `max_degree` with at most `len(x)` parts.
///
/// Values are stored for `x / s` with `s = max |x_i|`, so that
/// `C_kappa(x) = scaled(kappa) * s^|kappa|` stays in range.
#[derive(Debug, Clone)]
pub struct JackTable {
    algebra: Algebra,
    vars: usize,
    scale: f64,
    by_degree: Vec<Vec<(Vec<u32>, f64)>>,
}

impl JackTable {
    pub fn new(algebra: Algebra, x: &[f64], max_degree: usize) -> JackTable {
        let alpha = algebra.alpha();
        let n = x.len();
        let scale = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let xs: Vec<f64> = if scale > 0.0 {
            x.iter().map(|v| v / scale).collect()
        } else {
            alloc::vec![0.0; n]
        };

        // J values on the first `v` variables, keyed by trimmed partition.
        let mut prev: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        prev.insert(Vec::new(), 1.0);
        for v in 1..=n {
            let xv = xs[v - 1];
            let mut next = BTreeMap::new();
            for k in 0..=max_degree as u32 {
                for kappa in partitions_of(k, v) {
                    let mut acc = 0.0;
                    horizontal_strips(&kappa, v, |mu| {
                        if let Some(&jm) = prev.get(mu) {
                            let d = k - mu.iter().sum::<u32>();
                            if jm != 0.0 && (d == 0 || xv != 0.0) {
                                acc += jm * xv.powi(d as i32) * strip_coefficient(&kappa, mu, alpha);
                            }
                        }
                    });
                    next.insert(kappa, acc);
                }
            }
            prev = next;
        }

        let by_degree = (0..=max_degree as u32)
            .map(|k| {
                let log_norm = k as f64 * alpha.ln() + log_gamma(k as f64 + 1.0);
                partitions_of(k, n)
                    .into_iter()
                    .map(|kappa| {
                        let jv = prev.get(&kappa).copied().unwrap_or(0.0);
                        let c = jv * (log_norm - log_j(&kappa, alpha)).exp();
                        (kappa, c)
                    })
                    .collect()
            })
            .collect();
        JackTable {
            algebra,
            vars: n,
            scale,
            by_degree,
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    /// `max |x_i|`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `(kappa, C_kappa(x / s))` for every partition of `k`, in
    /// reverse-lexicographic order.
    pub fn degree(&self, k: usize) -> &[(Vec<u32>, f64)] {
        &self.by_degree[k]
    }

    /// `C_kappa(x)`; zero for partitions with more parts than variables.
    pub fn value(&self, kappa: &[u32]) -> f64 {
        let kappa = trim(kappa.to_vec());
        let k: u32 = kappa.iter().sum();
        if k as usize > self.max_degree() {
            return f64::NAN;
        }
        self.by_degree[k as usize]
            .iter()
            .find(|(p, _)| *p == kappa)
            .map_or(0.0, |(_, c)| c * self.scale.powi(k as i32))
    }
}

/// `C_kappa(x)` for a single partition.
pub fn jack_polynomial(algebra: Algebra, kappa: &[u32], x: &[f64]) -> f64 {
    let k: u32 = kappa.iter().sum();
    JackTable::new(algebra, x, k as usize).value(kappa)
}

#[cfg(test)]
mod tests {
    use super::*;


    #[test]
    fn zonal_degree_two() {
        let x = [1.5, -0.5];
        let t = JackTable::new(Algebra::Real, &x, 2);
        let (a, b) = (x[0], x[1]);
        assert!((t.value(&[2]) - (a * a + b * b + 2.0 / 3.0 * a * b)).abs() < 1e-13);
        assert!((t.value(&[1, 1]) - 4.0 / 3.0 * a * b).abs() < 1e-13);
    }

    #[test]
    fn schur_case() {
        // alpha = 1: C_kappa = k! / hook product * s_kappa; s_(2,1)(x,y,z)
        let x = [0.3, 1.1, 0.7];
        let s21 = {
            let (a, b, c) = (x[0], x[1], x[2]);
            a * a * b + a * a * c + b * b * a + b * b * c + c * c * a + c * c * b + 2.0 * a * b * c
        };
        let v = jack_polynomial(Algebra::Complex, &[2, 1], &x);
        assert!((v - 6.0 / 3.0 * s21).abs() < 1e-13);
    }

    #[test]
    fn normalization_and_ones() {
        for alg in Algebra::ALL {
            let x = [0.9, 0.4, 2.0];
            let t = JackTable::new(alg, &x, 5);
            for k in 0..=5 {
                let sum: f64 = t.degree(k).iter().map(|(_, c)| c).sum::<f64>() * t.scale().powi(k as i32);
                let tr: f64 = x.iter().sum::<f64>().powi(k as i32);
                assert!((sum - tr).abs() < 1e-12 * tr);
            }
            let ones = JackTable::new(alg, &[1.0; 3], 4);
            for (kappa, c) in ones.degree(4) {
                assert!((c.ln() - log_jack_at_ones(alg, kappa, 3)).abs() < 1e-12);
            }
        }
        assert_eq!(jack_polynomial(Algebra::Real, &[1, 1, 1], &[1.0, 2.0]), 0.0);
        assert!((jack_polynomial(Algebra::Quaternion, &[3], &[2.0]) - 8.0).abs() < 1e-13);
    }
}
