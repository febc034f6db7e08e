//! Closed-form Laplace-type integrals against nested double-exponential
//! quadrature of the defining integral
//! `int etr(-S^-1 X) |X|^{a-(m-1)beta/2-1} q_kappa(X^{+-1}) dX`.
//!
//! The cone is parameterized as `X = C T T* C*` with `S = C C*` (`C` lower)
//! and `T` lower triangular with positive diagonal, so that
//! `dX = J(C) 2^m prod_i t_ii^{beta(m-i)+1} dT`, where `J(C)` is the
//! congruence Jacobian. The integrand is evaluated with scalar arithmetic,
//! independently of the library's matrix routines.

use riesz_core::algebra::{Algebra, PositiveDefiniteMatrix};
use riesz_core::quadrature::{exp_sinh, sinh_sinh};
use riesz_core::riesz::{log_jacobian_congruence, log_laplace_integral, Scale};
use riesz_core::special::{Partition, WeightSign};
use riesz_core::{Error, Result, C64};

use crate::report::{Comparison, VerificationReport};

/// One closed-form evaluation to cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceCase {
    pub algebra: Algebra,
    pub a: f64,
    pub kappa: Partition,
    pub sigma: PositiveDefiniteMatrix,
    pub sign: WeightSign,
}

struct Integrand<'a> {
    case: &'a LaplaceCase,
    m: usize,
    /// Lower Cholesky factor of the scale, `c[i][j]` for `j <= i`.
    c: [[C64; 2]; 2],
    /// Entries `s11, s22, s21` and determinant of the scale.
    s: (f64, f64, C64, f64),
    /// Log of everything constant: the congruence Jacobian, `2^m` and the
    /// closed form being tested (so the integral should be 1).
    log_offset: f64,
    tol: f64,
}

impl Integrand<'_> {
    /// Log-integrand by direct `2 x 2` arithmetic: `X = M M*` with
    /// `M = C T`; the weighted power uses the leading minors of `X` or of
    /// `X^-1` (`x22 / |X|` and `1 / |X|`).
    fn log_value(&self, coords: &[f64]) -> f64 {
        let m = self.m;
        let beta = self.case.algebra.beta() as usize;
        if coords[..m].iter().any(|&t| !(t > 0.0)) || coords.iter().any(|t| t * t > 700.0) {
            return f64::NEG_INFINITY;
        }
        let c = &self.c;
        let (s11, s22, s21, det_s) = self.s;
        let (x11, x22, x21, det_x, minor) = if m == 1 {
            let x = c[0][0].norm_sqr() * coords[0] * coords[0];
            (x, 0.0, C64::new(0.0, 0.0), x, x)
        } else {
            let t21 = if beta == 1 {
                C64::new(coords[2], 0.0)
            } else {
                C64::new(coords[2], coords[3])
            };
            let m11 = c[0][0] * coords[0];
            let m21 = c[1][0] * coords[0] + c[1][1] * t21;
            let m22 = c[1][1] * coords[1];
            let x11 = m11.norm_sqr();
            let x22 = m21.norm_sqr() + m22.norm_sqr();
            let x21 = m21 * m11.conj();
            // |X| = |C|^2 |T|^2 avoids cancellation in x11 x22 - |x21|^2.
            let det_x = (c[0][0] * c[1][1]).norm_sqr() * (coords[0] * coords[1]).powi(2);
            (x11, x22, x21, det_x, x11)
        };
        let trace = if m == 1 {
            x11 / s11
        } else {
            (s22 * x11 + s11 * x22 - 2.0 * (s21 * x21.conj()).re) / det_s
        };
        let k = self.case.kappa.parts();
        let top = (k[0] - k.get(1).copied().unwrap_or(0)) as f64;
        let last = if m == 2 { k[1] as f64 } else { 0.0 };
        let log_q = match (self.case.sign, m) {
            (WeightSign::Positive, 1) => k[0] as f64 * x11.ln(),
            (WeightSign::Negative, 1) => -(k[0] as f64) * x11.ln(),
            (WeightSign::Positive, _) => top * minor.ln() + last * det_x.ln(),
            (WeightSign::Negative, _) => top * (x22 / det_x).ln() - last * det_x.ln(),
        };
        let exponent = self.case.a - (m as f64 - 1.0) * beta as f64 / 2.0 - 1.0;
        let log_jac: f64 = (0..m)
            .map(|i| ((beta * (m - 1 - i)) as f64 + 1.0) * coords[i].ln())
            .sum();
        -trace + exponent * det_x.ln() + log_q + log_jac - self.log_offset
    }

    fn nest(&self, level: usize, coords: &mut Vec<f64>, err: &mut Option<Error>) -> f64 {
        if level == coords.len() {
            return self.log_value(coords).exp();
        }
        let f = |x: f64| {
            coords[level] = x;
            self.nest(level + 1, coords, err)
        };
        let estimate = if level < self.m {
            exp_sinh(f, 0.0, self.tol)
        } else {
            sinh_sinh(f, self.tol)
        };
        match estimate {
            Ok(e) => e.value,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        }
    }
}

/// Relative error of the closed form; threshold `1e-8` for `m = 1` and
/// `1e-4` for `m = 2` (real or complex).
pub fn verify_laplace(case: &LaplaceCase) -> Result<VerificationReport> {
    let m = case.kappa.len();
    let algebra = case.algebra;
    if case.sigma.order() != m || case.sigma.algebra() != algebra {
        return Err(Error::Dimension {
            expected: m,
            found: case.sigma.order(),
        });
    }
    let (threshold, tol) = match (m, algebra) {
        (1, _) => (1e-8, 1e-11),
        (2, Algebra::Real | Algebra::Complex) => (1e-4, 1e-6),
        _ => return Err(Error::Unsupported("Laplace quadrature needs m = 1, or m = 2 over the reals or complexes")),
    };
    let closed = log_laplace_integral(algebra, case.a, &case.kappa, &Scale::Matrix(case.sigma.clone()), case.sign)?;
    let chol = case.sigma.cholesky();
    let log_offset = closed - log_jacobian_congruence(&chol)? - m as f64 * std::f64::consts::LN_2;
    let entry = |i: usize, j: usize| {
        let q = chol.entry(i, j);
        C64::new(q.w, q.x)
    };
    let sig = case.sigma.as_hermitian();
    let (s11, s22) = (sig.entry(0, 0).w, if m == 2 { sig.entry(1, 1).w } else { 0.0 });
    let s21 = if m == 2 {
        C64::new(sig.entry(1, 0).w, sig.entry(1, 0).x)
    } else {
        C64::new(0.0, 0.0)
    };
    let zero = C64::new(0.0, 0.0);
    let integrand = Integrand {
        case,
        m,
        c: if m == 2 {
            [[entry(0, 0), zero], [entry(1, 0), entry(1, 1)]]
        } else {
            [[entry(0, 0), zero], [zero, zero]]
        },
        s: (s11, s22, s21, s11 * s22 - s21.norm_sqr()),
        log_offset,
        tol,
    };
    let mut coords = vec![0.0; algebra.hermitian_dim(m)];
    let mut err = None;
    let ratio = integrand.nest(0, &mut coords, &mut err);
    if let Some(e) = err {
        return Err(e);
    }
    let sign = match case.sign {
        WeightSign::Positive => "+",
        WeightSign::Negative => "-",
    };
    Ok(VerificationReport::new(
        format!("laplace[beta={},m={m},a={},kappa={},sign={sign}]", algebra.beta(), case.a, case.kappa),
        (ratio - 1.0).abs(),
        threshold,
        Comparison::Below,
        coords.len() as u64,
    )
    .with_detail(format!("log closed form {closed:.12e}")))
}
