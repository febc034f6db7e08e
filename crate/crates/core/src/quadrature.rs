//! One-dimensional quadrature: fixed Gauss-Legendre rules and
//! double-exponential rules with level halving.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)] // inherent f64 methods shadow it when std is linked
use num_traits::Float;

use crate::{Error, Result};

/// An `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_n` from Chebyshev-like starting
    /// points.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "a Gauss-Legendre rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (half, mid) = ((b - a) / 2.0, (a + b) / 2.0);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.on(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integral estimate with the difference between the last two levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Double-exponential change of variables: `x(t)` and `x'(t)`.
trait Transform {
    fn map(&self, t: f64) -> (f64, f64);
    fn t_max(&self) -> f64;
}

struct TanhSinh {
    a: f64,
    b: f64,
}

impl Transform for TanhSinh {
    fn map(&self, t: f64) -> (f64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let half = (self.b - self.a) / 2.0;
        let cu = u.cosh();
        // measured from the nearer endpoint to keep relative accuracy there
        let x = if u < 0.0 {
            self.a + 2.0 * half / (1.0 + (-2.0 * u).exp())
        } else {
            self.b - 2.0 * half / (1.0 + (2.0 * u).exp())
        };
        (x, half * FRAC_PI_2 * t.cosh() / (cu * cu))
    }
    fn t_max(&self) -> f64 {
        4.5
    }
}

struct ExpSinh {
    a: f64,
}

impl Transform for ExpSinh {
    fn map(&self, t: f64) -> (f64, f64) {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        (self.a + e, e * FRAC_PI_2 * t.cosh())
    }
    fn t_max(&self) -> f64 {
        4.0
    }
}

struct SinhSinh;

impl Transform for SinhSinh {
    fn map(&self, t: f64) -> (f64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        (u.sinh(), FRAC_PI_2 * t.cosh() * u.cosh())
    }
    fn t_max(&self) -> f64 {
        4.0
    }
}

const MAX_LEVEL: usize = 10;

fn double_exponential(tr: &impl Transform, mut f: impl FnMut(f64) -> f64, rel_tol: f64) -> Result<Estimate> {
    let t_max = tr.t_max();
    let mut eval = |t: f64| {
        let (x, dx) = tr.map(t);
        if dx == 0.0 || !x.is_finite() || !dx.is_finite() {
            return 0.0;
        }
        let v = f(x) * dx;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut evaluations = 2 * k - 1;
    let mut estimate = sum * h;
    for _ in 0..MAX_LEVEL {
        h /= 2.0;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            evaluations += 2;
            k += 2;
        }
        let next = sum * h;
        let error = (next - estimate).abs();
        estimate = next;
        if error <= rel_tol * next.abs() || next == 0.0 {
            return Ok(Estimate {
                value: next,
                error,
                evaluations,
            });
        }
    }
    Err(Error::InvalidArgument(alloc::format!(
        "double-exponential quadrature did not reach {rel_tol:e} (estimate {estimate:e})"
    )))
}

/// `int_a^b f` by the tanh-sinh rule.
pub fn tanh_sinh(f: impl FnMut(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<Estimate> {
    double_exponential(&TanhSinh { a, b }, f, rel_tol)
}

/// `int_a^inf f` by the exp-sinh rule.
pub fn exp_sinh(f: impl FnMut(f64) -> f64, a: f64, rel_tol: f64) -> Result<Estimate> {
    double_exponential(&ExpSinh { a }, f, rel_tol)
}

/// `int_R f` by the sinh-sinh rule.
pub fn sinh_sinh(f: impl FnMut(f64) -> f64, rel_tol: f64) -> Result<Estimate> {
    double_exponential(&SinhSinh, f, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let g = GaussLegendre::new(7);
        let v = g.integrate(0.0, 2.0, |x| x.powi(13));
        assert!((v - 2f64.powi(14) / 14.0).abs() < 1e-10);
        let g = GaussLegendre::new(128);
        assert!((g.integrate(0.0, PI, |x| x.sin()) - 2.0).abs() < 1e-14);
        let total: f64 = g.on(-1.0, 1.0).map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn double_exponential_rules() {
        let e = exp_sinh(|x| x.powf(1.5) * (-x).exp(), 0.0, 1e-12).unwrap();
        assert!((e.value - libm::tgamma(2.5)).abs() < 1e-12);
        let e = sinh_sinh(|x| (-x * x).exp(), 1e-12).unwrap();
        assert!((e.value - PI.sqrt()).abs() < 1e-12);
        let e = tanh_sinh(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((e.value - 2.0).abs() < 1e-9);
    }
}
