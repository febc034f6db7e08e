//! Matrices over the real normed division algebras.
//!
//! Every matrix is stored through a complex embedding: real and complex
//! matrices as an m x m complex matrix, quaternion matrices as the 2m x 2m
//! complex matrix obtained by replacing each entry `z + w j` with the block
//! `[[z, w], [-conj(w), conj(z)]]`. Blocks are interleaved, so the leading
//! p x p quaternion block is the leading 2p x 2p complex block.

mod complexified;
mod matrix;
mod quaternion;
mod spectrum;

pub use complexified::{log_det_identity_minus_i, log_weighted_power_complex, pivot_logs_complex};
pub use matrix::{AlgebraMatrix, HermitianMatrix, PositiveDefiniteMatrix};
pub use quaternion::Quaternion;
pub use spectrum::Spectrum;

use crate::{Error, Result};

/// Relative eigenvalue gap below which two eigenvalues count as equal.
pub const COLLISION_TOL: f64 = 1e-9;

/// Relative tolerance for Hermitian and symplectic structure checks.
pub const STRUCTURE_TOL: f64 = 1e-9;

/// One of the four real normed division algebras, identified by its real
/// dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [
        Algebra::Real,
        Algebra::Complex,
        Algebra::Quaternion,
        Algebra::Octonion,
    ];

    /// The algebras with a matrix representation in this crate.
    pub const MATRIX: [Algebra; 3] = [Algebra::Real, Algebra::Complex, Algebra::Quaternion];

    pub fn from_beta(beta: u32) -> Result<Self> {
        match beta {
            1 => Ok(Algebra::Real),
            2 => Ok(Algebra::Complex),
            4 => Ok(Algebra::Quaternion),
            8 => Ok(Algebra::Octonion),
            other => Err(Error::InvalidAlgebra(other)),
        }
    }

    pub fn beta(self) -> u32 {
        match self {
            Algebra::Real => 1,
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
            Algebra::Octonion => 8,
        }
    }

    #[inline]
    pub fn beta_f64(self) -> f64 {
        self.beta() as f64
    }

    /// Jack parameter `2 / beta`.
    #[inline]
    pub fn alpha(self) -> f64 {
        2.0 / self.beta_f64()
    }

    pub fn supports_matrices(self) -> bool {
        self != Algebra::Octonion
    }

    pub(crate) fn require_matrices(self) -> Result<()> {
        if self.supports_matrices() {
            Ok(())
        } else {
            Err(Error::OctonionMatrix)
        }
    }

    /// Complex rows of the embedding per algebra row.
    #[inline]
    pub fn embedding_factor(self) -> usize {
        match self {
            Algebra::Quaternion => 2,
            _ => 1,
        }
    }

    /// Real dimension of the Hermitian matrices of order `m`.
    pub fn hermitian_dim(self, m: usize) -> usize {
        m + self.beta() as usize * m * (m.saturating_sub(1)) / 2
    }

    /// The constant `rho` in the eigenvalue transform: 0, -m, -2m, -4m.
    pub fn varrho(self, m: usize) -> f64 {
        let m = m as f64;
        match self {
            Algebra::Real => 0.0,
            Algebra::Complex => -m,
            Algebra::Quaternion => -2.0 * m,
            Algebra::Octonion => -4.0 * m,
        }
    }
}

impl core::fmt::Display for Algebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let name = match self {
            Algebra::Real => "real",
            Algebra::Complex => "complex",
            Algebra::Quaternion => "quaternion",
            Algebra::Octonion => "octonion",
        };
        f.write_str(name)
    }
}
