#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;
use alloc::vec::Vec;


use super::{Algebra, COLLISION_TOL};
use crate::{Error, Result};

/// Strictly decreasing positive eigenvalues `l_1 > ... > l_m > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    algebra: Algebra,
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts `values` into decreasing order and checks positivity and
    /// separation (relative gap above [`COLLISION_TOL`]).
    pub fn new(algebra: Algebra, mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite eigenvalue".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        if values[values.len() - 1] <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        for (index, w) in values.windows(2).enumerate() {
            let gap = (w[0] - w[1]) / w[0];
            if gap <= COLLISION_TOL {
                return Err(Error::EigenvalueCollision { index, gap });
            }
        }
        Ok(Spectrum { algebra, values })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn log_det(&self) -> f64 {
        self.values.iter().map(|v| v.ln()).sum()
    }

    /// `sum_{i<j} log(l_i - l_j)`.
    pub fn log_vandermonde(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.values.len() {
            for j in i + 1..self.values.len() {
                acc += (self.values[i] - self.values[j]).ln();
            }
        }
        acc
    }

    /// Spectrum of the inverse, again in decreasing order.
    pub fn reciprocal(&self) -> Spectrum {
        let values = self.values.iter().rev().map(|v| 1.0 / v).collect();
        Spectrum {
            algebra: self.algebra,
            values,
        }
    }
}
