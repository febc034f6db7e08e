#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::{Algebra, Quaternion, Spectrum, STRUCTURE_TOL};
use crate::{Error, Result, C64};

type CMat = DMatrix<C64>;

const ZERO: C64 = C64::new(0.0, 0.0);

fn embed_with(algebra: Algebra, m: usize, mut entry: impl FnMut(usize, usize) -> Quaternion) -> CMat {
    match algebra.embedding_factor() {
        1 => CMat::from_fn(m, m, |i, j| {
            let q = entry(i, j);
            C64::new(q.w, q.x)
        }),
        _ => {
            let mut e = CMat::zeros(2 * m, 2 * m);
            for i in 0..m {
                for j in 0..m {
                    let b = entry(i, j).block();
                    for (r, row) in b.iter().enumerate() {
                        for (c, v) in row.iter().enumerate() {
                            e[(2 * i + r, 2 * j + c)] = *v;
                        }
                    }
                }
            }
            e
        }
    }
}

fn entry_from(algebra: Algebra, e: &CMat, i: usize, j: usize) -> Quaternion {
    match algebra.embedding_factor() {
        1 => Quaternion::from_complex(e[(i, j)]),
        _ => Quaternion::from_block([
            [e[(2 * i, 2 * j)], e[(2 * i, 2 * j + 1)]],
            [e[(2 * i + 1, 2 * j)], e[(2 * i + 1, 2 * j + 1)]],
        ]),
    }
}

fn max_abs(e: &CMat) -> f64 {
    e.iter().fold(0.0, |acc, v| acc.max(v.norm()))
}

fn structure_scale(e: &CMat) -> f64 {
    max_abs(e).max(1.0)
}

/// Largest deviation of a quaternion embedding from the block form
/// `[[u, v], [-conj(v), conj(u)]]`, i.e. from `J conj(E) J^-1 = E`.
pub(crate) fn symplectic_residual(e: &CMat) -> f64 {
    let n = e.nrows() / 2;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let a = e[(2 * i, 2 * j)];
            let b = e[(2 * i, 2 * j + 1)];
            let c = e[(2 * i + 1, 2 * j)];
            let d = e[(2 * i + 1, 2 * j + 1)];
            worst = worst.max((d - a.conj()).norm()).max((c + b.conj()).norm());
        }
    }
    worst
}

fn hermitian_residual(e: &CMat) -> f64 {
    let n = e.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..=i {
            worst = worst.max((e[(i, j)] - e[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_algebra_entries(algebra: Algebra, e: &CMat) -> Result<()> {
    if algebra == Algebra::Real {
        let scale = structure_scale(e);
        let worst = e.iter().fold(0.0_f64, |a, v| a.max(v.im.abs()));
        if worst > STRUCTURE_TOL * scale {
            return Err(Error::InvalidArgument(alloc::format!(
                "real matrix has imaginary residue {worst:.3e}"
            )));
        }
    }
    if algebra == Algebra::Quaternion {
        if e.nrows() % 2 != 0 {
            return Err(Error::Dimension {
                expected: e.nrows() + 1,
                found: e.nrows(),
            });
        }
        let residual = symplectic_residual(e);
        if residual > STRUCTURE_TOL * structure_scale(e) {
            return Err(Error::NotSymplectic { residual });
        }
    }
    Ok(())
}

/// Project onto the embedding structure: drop imaginary parts for real
/// matrices and average the redundant block entries for quaternions.
fn project(algebra: Algebra, e: &mut CMat) {
    match algebra {
        Algebra::Real => e.iter_mut().for_each(|v| v.im = 0.0),
        Algebra::Quaternion => {
            let m = e.nrows() / 2;
            let fixed = embed_with(algebra, m, |i, j| entry_from(algebra, e, i, j));
            *e = fixed;
        }
        _ => {}
    }
}

fn symmetrize(e: &mut CMat) {
    let n = e.nrows();
    for i in 0..n {
        e[(i, i)] = C64::new(e[(i, i)].re, 0.0);
        for j in 0..i {
            let v = (e[(i, j)] + e[(j, i)].conj()) * 0.5;
            e[(i, j)] = v;
            e[(j, i)] = v.conj();
        }
    }
}

/// Transpose-free skew form `E J` of a quaternion embedding, whose Pfaffian
/// is the Moore determinant.
fn moore_skew(e: &CMat) -> CMat {
    let n = e.nrows();
    let mut k = CMat::zeros(n, n);
    for r in 0..n {
        for i in 0..n / 2 {
            k[(r, 2 * i)] = -e[(r, 2 * i + 1)];
            k[(r, 2 * i + 1)] = e[(r, 2 * i)];
        }
    }
    let kt = k.transpose();
    (k - kt) * C64::new(0.5, 0.0)
}

/// Pfaffian of a complex skew-symmetric matrix by pivoted elimination.
pub(crate) fn pfaffian(mut a: CMat) -> C64 {
    let n = a.nrows();
    if n % 2 == 1 {
        return ZERO;
    }
    let mut pf = C64::new(1.0, 0.0);
    let mut k = 0;
    while k < n {
        let (mut p, mut best) = (k + 1, a[(k, k + 1)].norm());
        for j in k + 2..n {
            let v = a[(k, j)].norm();
            if v > best {
                p = j;
                best = v;
            }
        }
        if best == 0.0 {
            return ZERO;
        }
        if p != k + 1 {
            a.swap_rows(k + 1, p);
            a.swap_columns(k + 1, p);
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        pf *= piv;
        for i in k + 2..n {
            for j in k + 2..n {
                let update = (a[(k, i)] * a[(k + 1, j)] - a[(k + 1, i)] * a[(k, j)]) / piv;
                a[(i, j)] -= update;
            }
        }
        k += 2;
    }
    pf
}

/// Reverse the algebra-level row and column order (blocks stay intact).
fn reverse_order(algebra: Algebra, e: &CMat) -> CMat {
    let d = algebra.embedding_factor();
    let n = e.nrows();
    let m = n / d;
    let idx = |r: usize| (m - 1 - r / d) * d + r % d;
    CMat::from_fn(n, n, |r, c| e[(idx(r), idx(c))])
}

/// A square matrix over a division algebra, not necessarily Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMatrix {
    algebra: Algebra,
    order: usize,
    embed: CMat,
}

impl AlgebraMatrix {
    pub fn from_fn(
        algebra: Algebra,
        order: usize,
        entry: impl FnMut(usize, usize) -> Quaternion,
    ) -> Result<Self> {
        algebra.require_matrices()?;
        let mut embed = embed_with(algebra, order, entry);
        project(algebra, &mut embed);
        Ok(AlgebraMatrix {
            algebra,
            order,
            embed,
        })
    }

    pub fn from_embedding(algebra: Algebra, embed: CMat) -> Result<Self> {
        algebra.require_matrices()?;
        if !embed.is_square() {
            return Err(Error::Dimension {
                expected: embed.nrows(),
                found: embed.ncols(),
            });
        }
        check_algebra_entries(algebra, &embed)?;
        let mut embed = embed;
        project(algebra, &mut embed);
        let order = embed.nrows() / algebra.embedding_factor();
        Ok(AlgebraMatrix {
            algebra,
            order,
            embed,
        })
    }

    pub fn identity(algebra: Algebra, order: usize) -> Result<Self> {
        algebra.require_matrices()?;
        let n = order * algebra.embedding_factor();
        Ok(AlgebraMatrix {
            algebra,
            order,
            embed: CMat::identity(n, n),
        })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn embedding(&self) -> &CMat {
        &self.embed
    }

    pub fn entry(&self, i: usize, j: usize) -> Quaternion {
        entry_from(self.algebra, &self.embed, i, j)
    }

    pub fn adjoint(&self) -> AlgebraMatrix {
        AlgebraMatrix {
            algebra: self.algebra,
            order: self.order,
            embed: self.embed.adjoint(),
        }
    }

    pub fn mul(&self, rhs: &AlgebraMatrix) -> Result<AlgebraMatrix> {
        self.check_same(rhs.algebra, rhs.order)?;
        Ok(AlgebraMatrix {
            algebra: self.algebra,
            order: self.order,
            embed: &self.embed * &rhs.embed,
        })
    }

    pub fn inverse(&self) -> Result<AlgebraMatrix> {
        let mut embed = self.embed.clone().try_inverse().ok_or(Error::Singular)?;
        project(self.algebra, &mut embed);
        Ok(AlgebraMatrix {
            algebra: self.algebra,
            order: self.order,
            embed,
        })
    }

    pub fn is_lower_triangular(&self) -> bool {
        let tol = STRUCTURE_TOL * structure_scale(&self.embed);
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.entry(i, j).norm_sqr().sqrt() <= tol))
    }

    /// `A A*`.
    pub fn gram(&self) -> HermitianMatrix {
        let mut embed = &self.embed * self.embed.adjoint();
        symmetrize(&mut embed);
        project(self.algebra, &mut embed);
        HermitianMatrix {
            algebra: self.algebra,
            order: self.order,
            embed,
        }
    }

    /// `A* A`.
    pub fn gram_adjoint(&self) -> HermitianMatrix {
        self.adjoint().gram()
    }

    /// `A X A*`.
    pub fn congruence(&self, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.check_same(x.algebra, x.order)?;
        let mut embed = &self.embed * &x.embed * self.embed.adjoint();
        symmetrize(&mut embed);
        project(self.algebra, &mut embed);
        Ok(HermitianMatrix {
            algebra: self.algebra,
            order: self.order,
            embed,
        })
    }

    /// `log |A* A|`, the quantity raised to a power by the congruence
    /// Jacobian. The embedding determinant is `|det A|^d` up to phase, so
    /// `log |A* A| = (2/d) log |det E(A)|`.
    pub fn log_gram_det(&self) -> Result<f64> {
        let det = self.embed.clone().lu().determinant().norm();
        let scale = self.embed.column_iter().map(|c| c.norm()).product::<f64>();
        if !(det > 1e-13 * scale) {
            return Err(Error::Singular);
        }
        Ok(2.0 / self.algebra.embedding_factor() as f64 * det.ln())
    }

    fn check_same(&self, algebra: Algebra, order: usize) -> Result<()> {
        if algebra != self.algebra {
            return Err(Error::InvalidArgument(alloc::format!(
                "algebra mismatch: {} vs {algebra}",
                self.algebra
            )));
        }
        if order != self.order {
            return Err(Error::Dimension {
                expected: self.order,
                found: order,
            });
        }
        Ok(())
    }
}

/// An element of the real vector space of Hermitian matrices over an
/// algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    algebra: Algebra,
    order: usize,
    embed: CMat,
}

impl HermitianMatrix {
    /// Build from the entries on and below the diagonal; the upper triangle
    /// is filled by conjugation. Diagonal entries must be real.
    pub fn from_lower(
        algebra: Algebra,
        order: usize,
        mut lower: impl FnMut(usize, usize) -> Quaternion,
    ) -> Result<Self> {
        algebra.require_matrices()?;
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(if i >= j { lower(i, j) } else { Quaternion::ZERO });
            }
        }
        for i in 0..order {
            let d = entries[i * order + i];
            let residual = (d.x * d.x + d.y * d.y + d.z * d.z).sqrt();
            if residual > STRUCTURE_TOL * d.w.abs().max(1.0) {
                return Err(Error::NotHermitian { residual });
            }
            entries[i * order + i] = Quaternion::real(d.w);
            for j in i + 1..order {
                entries[i * order + j] = entries[j * order + i].conj();
            }
        }
        let mut embed = embed_with(algebra, order, |i, j| entries[i * order + j]);
        project(algebra, &mut embed);
        symmetrize(&mut embed);
        Ok(HermitianMatrix {
            algebra,
            order,
            embed,
        })
    }

    /// Build from all entries (row-major), checking Hermitian symmetry.
    pub fn from_entries(algebra: Algebra, order: usize, entries: &[Quaternion]) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::Dimension {
                expected: order * order,
                found: entries.len(),
            });
        }
        algebra.require_matrices()?;
        let embed = embed_with(algebra, order, |i, j| entries[i * order + j]);
        Self::from_embedding(algebra, embed)
    }

    pub fn from_real_symmetric(order: usize, entries: &[f64]) -> Result<Self> {
        let q: Vec<Quaternion> = entries.iter().map(|&v| Quaternion::real(v)).collect();
        Self::from_entries(Algebra::Real, order, &q)
    }

    pub fn from_complex(order: usize, entries: &[C64]) -> Result<Self> {
        let q: Vec<Quaternion> = entries.iter().map(|&v| Quaternion::from_complex(v)).collect();
        Self::from_entries(Algebra::Complex, order, &q)
    }

    /// Validate an embedding (Hermitian, and symplectic for quaternions).
    pub fn from_embedding(algebra: Algebra, embed: CMat) -> Result<Self> {
        algebra.require_matrices()?;
        if !embed.is_square() {
            return Err(Error::Dimension {
                expected: embed.nrows(),
                found: embed.ncols(),
            });
        }
        check_algebra_entries(algebra, &embed)?;
        let residual = hermitian_residual(&embed);
        if residual > STRUCTURE_TOL * structure_scale(&embed) {
            return Err(Error::NotHermitian { residual });
        }
        let mut embed = embed;
        project(algebra, &mut embed);
        symmetrize(&mut embed);
        let order = embed.nrows() / algebra.embedding_factor();
        Ok(HermitianMatrix {
            algebra,
            order,
            embed,
        })
    }

    pub fn identity(algebra: Algebra, order: usize) -> Result<Self> {
        Self::scalar(algebra, order, 1.0)
    }

    pub fn scalar(algebra: Algebra, order: usize, s: f64) -> Result<Self> {
        algebra.require_matrices()?;
        let n = order * algebra.embedding_factor();
        Ok(HermitianMatrix {
            algebra,
            order,
            embed: CMat::identity(n, n) * C64::new(s, 0.0),
        })
    }

    pub fn diagonal(algebra: Algebra, diag: &[f64]) -> Result<Self> {
        Self::from_lower(algebra, diag.len(), |i, j| {
            if i == j {
                Quaternion::real(diag[i])
            } else {
                Quaternion::ZERO
            }
        })
    }

    pub fn zeros(algebra: Algebra, order: usize) -> Result<Self> {
        Self::scalar(algebra, order, 0.0)
    }

    /// Rebuild from [`HermitianMatrix::realified`] coordinates.
    pub fn from_realified(algebra: Algebra, order: usize, coords: &[f64]) -> Result<Self> {
        let dim = algebra.hermitian_dim(order);
        if coords.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: coords.len(),
            });
        }
        let beta = algebra.beta() as usize;
        let mut lower = Vec::with_capacity(order * order);
        let mut pos = 0;
        for i in 0..order {
            for j in 0..=i {
                if i == j {
                    lower.push(Quaternion::real(coords[pos]));
                    pos += 1;
                } else {
                    lower.push(Quaternion::from_coords(&coords[pos..pos + beta]));
                    pos += beta;
                }
            }
        }
        Self::from_lower(algebra, order, |i, j| lower[i * (i + 1) / 2 + j])
    }

    /// Real coordinates of the lower triangle, row by row: one value per
    /// diagonal entry, `beta` values (w, x, y, z order) per off-diagonal
    /// entry.
    pub fn realified(&self) -> Vec<f64> {
        let beta = self.algebra.beta() as usize;
        let mut out = Vec::with_capacity(self.algebra.hermitian_dim(self.order));
        for i in 0..self.order {
            for j in 0..=i {
                let q = self.entry(i, j);
                if i == j {
                    out.push(q.w);
                } else {
                    out.extend_from_slice(&q.coords()[..beta]);
                }
            }
        }
        out
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn embedding(&self) -> &CMat {
        &self.embed
    }

    pub fn entry(&self, i: usize, j: usize) -> Quaternion {
        entry_from(self.algebra, &self.embed, i, j)
    }

    fn factor(&self) -> f64 {
        self.algebra.embedding_factor() as f64
    }

    pub fn trace(&self) -> f64 {
        self.embed.trace().re / self.factor()
    }

    /// Real trace `tr(self * rhs)` (the real part for quaternions).
    pub fn trace_product(&self, rhs: &HermitianMatrix) -> Result<f64> {
        self.check_same(rhs)?;
        let n = self.embed.nrows();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.embed[(i, j)] * rhs.embed[(j, i)]).re;
            }
        }
        Ok(acc / self.factor())
    }

    pub fn add(&self, rhs: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.check_same(rhs)?;
        Ok(HermitianMatrix {
            embed: &self.embed + &rhs.embed,
            ..self.clone()
        })
    }

    pub fn sub(&self, rhs: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.check_same(rhs)?;
        Ok(HermitianMatrix {
            embed: &self.embed - &rhs.embed,
            ..self.clone()
        })
    }

    pub fn scale(&self, s: f64) -> HermitianMatrix {
        HermitianMatrix {
            embed: &self.embed * C64::new(s, 0.0),
            ..self.clone()
        }
    }

    pub fn to_matrix(&self) -> AlgebraMatrix {
        AlgebraMatrix {
            algebra: self.algebra,
            order: self.order,
            embed: self.embed.clone(),
        }
    }

    fn leading_embedding(&self, p: usize) -> CMat {
        let n = p * self.algebra.embedding_factor();
        self.embed.view((0, 0), (n, n)).into_owned()
    }

    /// Determinant of the leading `p x p` block (Moore determinant for
    /// quaternions, evaluated as a Pfaffian so that its sign is exact).
    pub fn leading_minor(&self, p: usize) -> Result<f64> {
        if p == 0 || p > self.order {
            return Err(Error::InvalidArgument(alloc::format!(
                "minor order {p} outside 1..={}",
                self.order
            )));
        }
        let block = self.leading_embedding(p);
        Ok(match self.algebra {
            Algebra::Quaternion => pfaffian(moore_skew(&block)).re,
            _ => block.determinant().re,
        })
    }

    /// Leading minor as a complex number: the imaginary part is the rounding
    /// residue that realness checks inspect.
    pub fn leading_minor_complex(&self, p: usize) -> Result<C64> {
        if p == 0 || p > self.order {
            return Err(Error::InvalidArgument(alloc::format!(
                "minor order {p} outside 1..={}",
                self.order
            )));
        }
        let block = self.leading_embedding(p);
        Ok(match self.algebra {
            Algebra::Quaternion => pfaffian(moore_skew(&block)),
            _ => block.determinant(),
        })
    }

    pub fn determinant(&self) -> f64 {
        if self.order == 0 {
            return 1.0;
        }
        self.leading_minor(self.order).unwrap_or(0.0)
    }

    /// Eigenvalues in decreasing order. Quaternion eigenvalues are doubled
    /// in the embedding; each pair is reported once.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues_with_pair_gap().0
    }

    /// Eigenvalues plus the largest gap inside an embedding pair (zero
    /// unless quaternion).
    pub fn eigenvalues_with_pair_gap(&self) -> (Vec<f64>, f64) {
        let mut all: Vec<f64> = self
            .embed
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        all.sort_by(|a, b| b.total_cmp(a));
        if self.algebra.embedding_factor() == 1 {
            return (all, 0.0);
        }
        let mut gap: f64 = 0.0;
        let vals = all
            .chunks(2)
            .map(|p| {
                gap = gap.max((p[0] - p[1]).abs());
                0.5 * (p[0] + p[1])
            })
            .collect();
        (vals, gap)
    }

    /// Strictly ordered positive spectrum.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let vals = self.eigenvalues();
        if vals.last().is_some_and(|&v| v <= 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        Spectrum::new(self.algebra, vals)
    }

    pub fn positive_definite(&self) -> Result<PositiveDefiniteMatrix> {
        PositiveDefiniteMatrix::new(self.clone())
    }

    pub fn inverse(&self) -> Result<HermitianMatrix> {
        let mut embed = self.embed.clone().try_inverse().ok_or(Error::Singular)?;
        symmetrize(&mut embed);
        project(self.algebra, &mut embed);
        Ok(HermitianMatrix {
            embed,
            ..self.clone()
        })
    }

    /// `Some(s)` when the matrix equals `s I` to structure tolerance.
    pub fn as_scalar(&self) -> Option<f64> {
        let s = self.embed[(0, 0)].re;
        let tol = STRUCTURE_TOL * structure_scale(&self.embed);
        let n = self.embed.nrows();
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { C64::new(s, 0.0) } else { ZERO };
                if (self.embed[(i, j)] - target).norm() > tol {
                    return None;
                }
            }
        }
        Some(s)
    }

    fn check_same(&self, rhs: &HermitianMatrix) -> Result<()> {
        if rhs.algebra != self.algebra {
            return Err(Error::InvalidArgument(alloc::format!(
                "algebra mismatch: {} vs {}",
                self.algebra,
                rhs.algebra
            )));
        }
        if rhs.order != self.order {
            return Err(Error::Dimension {
                expected: self.order,
                found: rhs.order,
            });
        }
        Ok(())
    }
}

/// A Hermitian matrix whose Cholesky factorization succeeds. The lower
/// factor of the embedding is kept alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveDefiniteMatrix {
    base: HermitianMatrix,
    chol: CMat,
}

impl PositiveDefiniteMatrix {
    pub fn new(base: HermitianMatrix) -> Result<Self> {
        let chol = base
            .embed
            .clone()
            .cholesky()
            .ok_or(Error::NotPositiveDefinite)?
            .l();
        if chol
            .diagonal()
            .iter()
            .any(|d| !(d.re > 0.0 && d.re.is_finite() && d.im.abs() <= 1e-8 * d.re))
        {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(PositiveDefiniteMatrix { base, chol })
    }

    pub fn identity(algebra: Algebra, order: usize) -> Result<Self> {
        Self::new(HermitianMatrix::identity(algebra, order)?)
    }

    pub fn diagonal(algebra: Algebra, diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::diagonal(algebra, diag)?)
    }

    pub fn scalar(algebra: Algebra, order: usize, s: f64) -> Result<Self> {
        Self::new(HermitianMatrix::scalar(algebra, order, s)?)
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.base
    }

    pub fn algebra(&self) -> Algebra {
        self.base.algebra
    }

    pub fn order(&self) -> usize {
        self.base.order
    }

    /// Lower triangular `C` with `C C* = A` and positive real diagonal.
    pub fn cholesky(&self) -> AlgebraMatrix {
        let mut embed = self.chol.clone();
        project(self.base.algebra, &mut embed);
        AlgebraMatrix {
            algebra: self.base.algebra,
            order: self.base.order,
            embed,
        }
    }

    /// Upper triangular `R` with `R R* = A` and positive real diagonal.
    pub fn upper_cholesky(&self) -> AlgebraMatrix {
        let algebra = self.base.algebra;
        let reversed = reverse_order(algebra, &self.base.embed);
        let l = reversed
            .cholesky()
            .expect("a congruent permutation of a positive definite matrix is positive definite")
            .l();
        let mut embed = reverse_order(algebra, &l);
        project(algebra, &mut embed);
        AlgebraMatrix {
            algebra,
            order: self.base.order,
            embed,
        }
    }

    /// Logarithms of the ratios of consecutive leading minors,
    /// `log(|A_i| / |A_{i-1}|) = 2 log c_ii`.
    pub fn pivot_logs(&self) -> Vec<f64> {
        pivot_logs_of(self.base.algebra, self.base.order, &self.chol)
    }

    /// Same as [`Self::pivot_logs`] for the upper factor: `-log` of the
    /// ratios of consecutive leading minors of the inverse.
    pub fn upper_pivot_logs(&self) -> Vec<f64> {
        let r = self.upper_cholesky();
        pivot_logs_of(self.base.algebra, self.base.order, &r.embed)
    }

    pub fn log_leading_minors(&self) -> Vec<f64> {
        self.pivot_logs()
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }

    pub fn log_det(&self) -> f64 {
        self.pivot_logs().iter().sum()
    }

    pub fn inverse(&self) -> PositiveDefiniteMatrix {
        let linv = self
            .chol
            .solve_lower_triangular(&CMat::identity(self.chol.nrows(), self.chol.nrows()))
            .expect("Cholesky factor has a positive diagonal");
        let mut embed = linv.adjoint() * linv;
        symmetrize(&mut embed);
        project(self.base.algebra, &mut embed);
        PositiveDefiniteMatrix::new(HermitianMatrix {
            embed,
            ..self.base.clone()
        })
        .expect("inverse of a positive definite matrix is positive definite")
    }

    /// Hermitian square root `A^{1/2}` with `(A^{1/2})^2 = A`.
    pub fn sqrt(&self) -> PositiveDefiniteMatrix {
        let eig = self.base.embed.clone().symmetric_eigen();
        let d = CMat::from_diagonal(&eig.eigenvalues.map(|v| C64::new(v.max(0.0).sqrt(), 0.0)));
        let mut embed = &eig.eigenvectors * d * eig.eigenvectors.adjoint();
        symmetrize(&mut embed);
        project(self.base.algebra, &mut embed);
        PositiveDefiniteMatrix::new(HermitianMatrix {
            embed,
            ..self.base.clone()
        })
        .expect("square root of a positive definite matrix is positive definite")
    }
}

fn pivot_logs_of(algebra: Algebra, order: usize, factor: &CMat) -> Vec<f64> {
    let d = algebra.embedding_factor();
    (0..order)
        .map(|i| {
            let mut s = 0.0;
            for r in 0..d {
                s += factor[(i * d + r, i * d + r)].re.ln();
            }
            2.0 * s / d as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quaternion_hermitian_2() -> HermitianMatrix {
        let q = Quaternion::new(0.3, -0.4, 0.5, 0.2);
        HermitianMatrix::from_lower(Algebra::Quaternion, 2, |i, j| match (i, j) {
            (0, 0) => Quaternion::real(2.0),
            (1, 1) => Quaternion::real(1.5),
            _ => q,
        })
        .unwrap()
    }

    #[test]
    fn pfaffian_matches_explicit_4x4() {
        let vals = [0.7, -1.3, 0.2, 2.1, 0.4, -0.9];
        let mut a = CMat::zeros(4, 4);
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                a[(i, j)] = C64::new(vals[k], 0.1 * k as f64);
                a[(j, i)] = -a[(i, j)];
                k += 1;
            }
        }
        let explicit = a[(0, 1)] * a[(2, 3)] - a[(0, 2)] * a[(1, 3)] + a[(0, 3)] * a[(1, 2)];
        let pf = pfaffian(a.clone());
        assert!((pf - explicit).norm() < 1e-13);
        assert!((pf * pf - a.determinant()).norm() < 1e-12);
    }

    #[test]
    fn moore_determinant_squares_to_embedding_determinant() {
        let h = quaternion_hermitian_2();
        let moore = h.determinant();
        let emb = h.embedding().determinant();
        assert!((moore * moore - emb.re).abs() < 1e-12);
        // 2 * 1.5 - |q|^2
        let q2 = 0.3f64 * 0.3 + 0.4 * 0.4 + 0.5 * 0.5 + 0.2 * 0.2;
        assert!((moore - (3.0 - q2)).abs() < 1e-13);
    }

    #[test]
    fn negative_moore_determinant_keeps_sign() {
        let h = HermitianMatrix::diagonal(Algebra::Quaternion, &[2.0, -3.0]).unwrap();
        assert!((h.determinant() + 6.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_octonion_and_bad_structure() {
        assert_eq!(
            HermitianMatrix::identity(Algebra::Octonion, 2),
            Err(Error::OctonionMatrix)
        );
        let mut e = quaternion_hermitian_2().embedding().clone();
        e[(0, 3)] += C64::new(0.5, 0.0);
        e[(3, 0)] += C64::new(0.5, 0.0);
        assert!(matches!(
            HermitianMatrix::from_embedding(Algebra::Quaternion, e),
            Err(Error::NotSymplectic { .. })
        ));
        let bad = HermitianMatrix::from_real_symmetric(2, &[1.0, 2.0, 3.0, 1.0]);
        assert!(matches!(bad, Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn realified_round_trip() {
        let h = quaternion_hermitian_2();
        let coords = h.realified();
        assert_eq!(coords.len(), Algebra::Quaternion.hermitian_dim(2));
        let back = HermitianMatrix::from_realified(Algebra::Quaternion, 2, &coords).unwrap();
        assert!((back.embedding() - h.embedding()).norm() < 1e-15);
    }

    #[test]
    fn upper_cholesky_reconstructs() {
        let pd = quaternion_hermitian_2().positive_definite().unwrap();
        let r = pd.upper_cholesky();
        assert!(r.adjoint().is_lower_triangular());
        let back = r.gram();
        assert!((back.embedding() - pd.as_hermitian().embedding()).norm() < 1e-13);
        let lower = pd.cholesky();
        assert!(lower.is_lower_triangular());
    }
}
